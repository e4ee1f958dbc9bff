"""Synthetic-cohort simulator for the closed feedback loop.

Each synthetic student has a ground-truth role and votes a teammate's true
role with probability ``vote_accuracy``, otherwise uniformly one of the
other seven roles. Rounds alternate allocation (random while the history
is empty, informed afterwards), one vote per ordered teammate pair, and a
posterior snapshot, so convergence of MAP roles toward ground truth can be
measured directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .bayes import map_role, posteriors_for_roster
from .errors import InvalidDistribution
from .pipeline import AllocationConfig, plan_allocation
from .roles import (
    NUM_ROLES,
    EvaluationHistory,
    EvaluationRecord,
    Role,
    StudentId,
    make_roster,
)
from .solver import SizeBounds, SolveBudget

# Informed rounds at classroom scale run through the local-search solver;
# a few dozen steepest scans are plenty at n <= ~100.
SIM_CONFIG = AllocationConfig(budget=SolveBudget(max_iterations=40))


@dataclass(frozen=True)
class SyntheticStudent:
    id: StudentId
    true_role: Role
    vote_accuracy: float

    def __post_init__(self):
        if not 0.0 <= self.vote_accuracy <= 1.0:
            raise ValueError(f"vote_accuracy must be in [0, 1], got {self.vote_accuracy}")


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-round telemetry of one simulated cohort.

    ``stable`` for round 1 compares against the empty-history MAP snapshot.
    ``objective`` is the allocated structure's value as estimated at
    allocation time. ``history`` carries the accumulated votes so reported
    fractions can be recomputed independently.
    """

    rounds: int
    true_match: tuple[float, ...]
    stable: tuple[float, ...]
    objective: tuple[float, ...]
    history: EvaluationHistory = EvaluationHistory()


def balanced_cohort(n: int, accuracy: float) -> list[SyntheticStudent]:
    """n students with true roles assigned round-robin, as equal as n allows.

    With a balanced role mix the classroom prior stays near uniform, so a
    handful of consistent votes is always enough to pull a student's MAP
    role to the truth; sampled cohorts can instead leave a role with a
    single student whose prior mass ends up dominated by popular roles.
    """
    return [SyntheticStudent(id=f"stu-{i + 1:04d}", true_role=Role(i % NUM_ROLES),
                             vote_accuracy=accuracy)
            for i in range(n)]


def synth_cohort(n: int, role_distribution: Mapping[Role, float] | Sequence[float] | None,
                 accuracy: float, seed: int) -> list[SyntheticStudent]:
    """Sample n students with true roles drawn by weight; deterministic per seed."""
    if role_distribution is None:
        weights = np.ones(NUM_ROLES)
    elif isinstance(role_distribution, Mapping):
        weights = np.zeros(NUM_ROLES)
        for role, w in role_distribution.items():
            weights[role] = w
    else:
        weights = np.asarray(role_distribution, dtype=float)
        if weights.shape != (NUM_ROLES,):
            raise InvalidDistribution(f"need {NUM_ROLES} weights, got shape {weights.shape}")
    if (weights < 0).any() or weights.sum() <= 0:
        raise InvalidDistribution("role weights must be non-negative and not all zero")

    rng = np.random.default_rng(seed)
    roles = rng.choice(NUM_ROLES, size=n, p=weights / weights.sum())
    return [SyntheticStudent(id=f"stu-{i + 1:04d}", true_role=Role(int(r)),
                             vote_accuracy=accuracy)
            for i, r in enumerate(roles)]


def _vote(rng: np.random.Generator, voter: SyntheticStudent, target: SyntheticStudent) -> Role:
    if rng.random() < voter.vote_accuracy:
        return target.true_role
    wrong = int(rng.integers(NUM_ROLES - 1))
    return Role(wrong if wrong < target.true_role else wrong + 1)


def run_rounds(cohort: Sequence[SyntheticStudent], rounds: int, bounds: SizeBounds,
               seed: int, cfg: AllocationConfig = SIM_CONFIG) -> ConvergenceReport:
    """Simulate `rounds` allocate-vote-update cycles and report convergence."""
    by_id = {s.id: s for s in cohort}
    roster = make_roster([s.id for s in cohort])
    rng = np.random.default_rng(seed)
    history = EvaluationHistory()

    posteriors = posteriors_for_roster(history, roster, cfg.smoothing)
    prev_maps = {sid: map_role(p) for sid, p in posteriors.items()}

    true_match: list[float] = []
    stable: list[float] = []
    objective: list[float] = []

    timestamp = 0
    for round_no in range(1, rounds + 1):
        round_seed = int(rng.integers(2 ** 31))
        report = plan_allocation(roster, history, bounds, seed=round_seed, cfg=cfg)
        objective.append(report.value)

        activity_id = f"round-{round_no:03d}"
        records = []
        for team in report.structure:
            members = team.ordered_members
            for evaluator in members:
                for evaluatee in members:
                    if evaluator == evaluatee:
                        continue
                    timestamp += 1
                    records.append(EvaluationRecord(
                        activity_id=activity_id,
                        evaluator=evaluator,
                        evaluatee=evaluatee,
                        role=_vote(rng, by_id[evaluator], by_id[evaluatee]),
                        timestamp=timestamp,
                    ))
        history = history.extend(records)

        posteriors = posteriors_for_roster(history, roster, cfg.smoothing)
        maps = {sid: map_role(p) for sid, p in posteriors.items()}
        true_match.append(sum(maps[s.id] == s.true_role for s in cohort) / len(cohort))
        stable.append(sum(maps[sid] == prev_maps[sid] for sid in roster) / len(roster))
        prev_maps = maps

    return ConvergenceReport(
        rounds=rounds,
        true_match=tuple(true_match),
        stable=tuple(stable),
        objective=tuple(objective),
        history=history,
    )


def fractions_from_history(cohort: Sequence[SyntheticStudent], history: EvaluationHistory,
                           cfg: AllocationConfig = SIM_CONFIG) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Recompute (true_match, stable) per round from a finished history.

    Independent of the streaming path in run_rounds: replays cumulative
    per-activity prefixes of the final history.
    """
    roster = make_roster([s.id for s in cohort])
    by_activity: dict[str, list[EvaluationRecord]] = {}
    for rec in history.records:
        by_activity.setdefault(rec.activity_id, []).append(rec)

    cumulative = EvaluationHistory()
    posteriors = posteriors_for_roster(cumulative, roster, cfg.smoothing)
    prev_maps = {sid: map_role(p) for sid, p in posteriors.items()}
    true_match: list[float] = []
    stable: list[float] = []
    for aid in history.activity_order():
        cumulative = cumulative.extend(by_activity[aid])
        posteriors = posteriors_for_roster(cumulative, roster, cfg.smoothing)
        maps = {sid: map_role(p) for sid, p in posteriors.items()}
        true_match.append(sum(maps[s.id] == s.true_role for s in cohort) / len(cohort))
        stable.append(sum(maps[sid] == prev_maps[sid] for sid in roster) / len(roster))
        prev_maps = maps
    return tuple(true_match), tuple(stable)
