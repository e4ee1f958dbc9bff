"""Activity lifecycle: create, allocate (cold or informed), collect feedback.

An activity moves strictly along Draft -> Allocated -> Published ->
FeedbackOpen -> Closed. Allocation is random while nobody in the roster has
received any vote; as soon as one student has history, every allocation is
informed (smoothing covers the students without votes).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .bayes import SmoothingConfig, map_role, posterior, posteriors_for_roster
from .errors import Infeasible, InvalidState, NotTeammates
from .roles import (
    EvaluationHistory,
    EvaluationRecord,
    Role,
    Roster,
    StudentId,
    TeamStructure,
)
from .solver import (
    EXACT_CAP_DEFAULT,
    SizeBounds,
    SolveBudget,
    SolveReport,
    feasible,
    random_structure,
    solve_exact,
    solve_heuristic,
    structure_value,
)


class ActivityStatus(str, Enum):
    Draft = "Draft"
    Allocated = "Allocated"
    Published = "Published"
    FeedbackOpen = "FeedbackOpen"
    Closed = "Closed"


STATUS_ORDER: tuple[ActivityStatus, ...] = (
    ActivityStatus.Draft,
    ActivityStatus.Allocated,
    ActivityStatus.Published,
    ActivityStatus.FeedbackOpen,
    ActivityStatus.Closed,
)


def next_status(status: ActivityStatus) -> ActivityStatus | None:
    i = STATUS_ORDER.index(status)
    return STATUS_ORDER[i + 1] if i + 1 < len(STATUS_ORDER) else None


@dataclass(frozen=True)
class Activity:
    activity_id: str
    module_id: str
    description: str
    start_date: str                  # ISO-8601 calendar date
    end_date: str
    bounds: SizeBounds
    seed: int = 0
    status: ActivityStatus = ActivityStatus.Draft
    allocation: TeamStructure | None = None
    allocation_method: str | None = None
    allocation_value: float | None = None

    def __post_init__(self):
        date.fromisoformat(self.start_date)
        date.fromisoformat(self.end_date)
        allocated = STATUS_ORDER.index(self.status) >= STATUS_ORDER.index(ActivityStatus.Allocated)
        if allocated != (self.allocation is not None):
            raise ValueError("allocation must be present exactly from Allocated onwards")


@dataclass(frozen=True)
class AllocationConfig:
    """Knobs for informed allocation; defaults match the service/CLI defaults."""

    alpha: float = 1.0
    exact_cap: int = EXACT_CAP_DEFAULT
    budget: SolveBudget = SolveBudget()

    @property
    def smoothing(self) -> SmoothingConfig:
        return SmoothingConfig(self.alpha)


DEFAULT_CONFIG = AllocationConfig()


def advance(activity: Activity, to: ActivityStatus) -> Activity:
    """Move one step along the status chain; anything else is InvalidState."""
    if next_status(activity.status) != to:
        raise InvalidState(f"cannot move activity {activity.activity_id!r} from "
                           f"{activity.status.value} to {to.value}")
    return replace(activity, status=to)


def plan_allocation(roster: Roster, history: EvaluationHistory, bounds: SizeBounds,
                    seed: int, cfg: AllocationConfig = DEFAULT_CONFIG) -> SolveReport:
    """Choose a team structure for the roster given the evidence so far.

    Cold start (no roster member has any received vote): a seeded random
    partition. Otherwise an informed solve over the posteriors: exact up to
    cfg.exact_cap students, local search beyond.
    """
    n = len(roster)
    if not feasible(n, bounds):
        raise Infeasible(f"cannot split {n} students into teams of [{bounds.size_min}, {bounds.size_max}]")

    posteriors = posteriors_for_roster(history, roster, cfg.smoothing)
    cold = all(len(history.per_student(sid)) == 0 for sid in roster)
    if cold:
        structure = random_structure(roster, bounds, seed)
        return SolveReport(
            structure=structure,
            value=structure_value(structure, posteriors),
            method="random",
            optimal=False,
            iterations=0,
            wall_time_ms=0.0,
        )
    if n <= cfg.exact_cap:
        return solve_exact(posteriors, bounds, cap=cfg.exact_cap)
    return solve_heuristic(posteriors, bounds, seed=seed, budget=cfg.budget)


def allocate(activity: Activity, roster: Roster, history: EvaluationHistory,
             cfg: AllocationConfig = DEFAULT_CONFIG) -> Activity:
    """Attach a team structure to a Draft activity and mark it Allocated."""
    if activity.status != ActivityStatus.Draft:
        raise InvalidState(f"activity {activity.activity_id!r} is {activity.status.value}, not Draft")
    report = plan_allocation(roster, history, activity.bounds, activity.seed, cfg)
    return replace(
        activity,
        status=ActivityStatus.Allocated,
        allocation=report.structure,
        allocation_method=report.method,
        allocation_value=report.value,
    )


def _team_of(activity: Activity, sid: StudentId):
    assert activity.allocation is not None
    for team in activity.allocation:
        if sid in team:
            return team
    return None


def ingest_feedback(activity: Activity, records: Iterable[EvaluationRecord],
                    history: EvaluationHistory) -> EvaluationHistory:
    """Validate and append peer votes for an activity collecting feedback.

    Each record must name two distinct members of the same allocated team.
    A repeated (activity, evaluator, evaluatee) triple replaces the earlier
    vote instead of growing the history.
    """
    if activity.status != ActivityStatus.FeedbackOpen:
        raise InvalidState(f"activity {activity.activity_id!r} is {activity.status.value}, "
                           "not FeedbackOpen")
    records = list(records)
    for rec in records:
        if rec.activity_id != activity.activity_id:
            raise ValueError(f"record targets activity {rec.activity_id!r}, "
                             f"expected {activity.activity_id!r}")
        team = _team_of(activity, rec.evaluator)
        if team is None or rec.evaluatee not in team:
            raise NotTeammates(f"{rec.evaluator!r} and {rec.evaluatee!r} do not share a team "
                               f"in activity {activity.activity_id!r}")
    return history.extend(records)


def convergence_status(history: EvaluationHistory, roster: Roster, window: int,
                       activity_order: Sequence[str] | None = None,
                       cfg: SmoothingConfig | None = None) -> dict[StudentId, bool]:
    """Which students' MAP role has been stable over the last `window` activities.

    Snapshots are the posteriors after each activity's feedback, in activity
    order (first appearance in the history unless given explicitly). A
    student with fewer snapshots than the window is not converged.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    cfg = cfg or SmoothingConfig()
    order = tuple(activity_order) if activity_order is not None else history.activity_order()
    if len(order) < window:
        return {sid: False for sid in roster}

    maps_per_snapshot: list[dict[StudentId, Role]] = []
    cumulative = EvaluationHistory()
    by_activity: dict[str, list[EvaluationRecord]] = {aid: [] for aid in order}
    for rec in history.records:
        if rec.activity_id in by_activity:
            by_activity[rec.activity_id].append(rec)
    for aid in order:
        cumulative = cumulative.extend(by_activity[aid])
        maps_per_snapshot.append({sid: map_role(posterior(cumulative, sid, cfg)) for sid in roster})

    recent = maps_per_snapshot[-window:]
    return {
        sid: all(snap[sid] == recent[0][sid] for snap in recent)
        for sid in roster
    }
