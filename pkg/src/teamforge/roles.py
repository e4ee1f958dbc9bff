"""Domain vocabulary: Belbin roles, students, rosters, teams, structures, histories.

Everything here is an immutable value; instances can be shared freely
between threads and tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import SelfEvaluation, UnknownRole


class Role(IntEnum):
    """The eight Belbin behavioural patterns, with stable ordinals 0..7.

    Ordinal order is the canonical listing order and is used for
    deterministic tie-breaking throughout the package.
    """

    Plant = 0
    ResourceInvestigator = 1
    Coordinator = 2
    Shaper = 3
    MonitorEvaluator = 4
    Teamworker = 5
    Implementer = 6
    CompleterFinisher = 7

    @property
    def label(self) -> str:
        return self.name


NUM_ROLES = 8
ROLES: tuple[Role, ...] = tuple(Role)

# Two-letter codes plus common single-word shorthands. Lookup is
# case-insensitive and ignores spaces, hyphens and underscores, so
# "resource investigator" and "co-ordinator" also resolve.
ROLE_ALIASES: dict[str, Role] = {
    "pl": Role.Plant,
    "ri": Role.ResourceInvestigator,
    "co": Role.Coordinator,
    "sh": Role.Shaper,
    "me": Role.MonitorEvaluator,
    "tw": Role.Teamworker,
    "im": Role.Implementer,
    "cf": Role.CompleterFinisher,
    "creative": Role.Plant,
    "investigator": Role.ResourceInvestigator,
    "monitor": Role.MonitorEvaluator,
    "finisher": Role.CompleterFinisher,
    "completer": Role.CompleterFinisher,
}

_CANONICAL = {role.name.lower(): role for role in Role}


def role_from_label(label: str) -> Role:
    """Resolve a role label (canonical name or documented alias) to a Role.

    Raises UnknownRole if nothing matches; in particular the nine-role
    variant's "specialist" is rejected.
    """
    key = "".join(ch for ch in label.lower() if ch.isalnum())
    if key in _CANONICAL:
        return _CANONICAL[key]
    if key in ROLE_ALIASES:
        return ROLE_ALIASES[key]
    raise UnknownRole(f"unknown role label: {label!r}")


# A student is identified by an opaque non-empty string, unique per roster.
StudentId = str

# An ordered roster of students; build via make_roster to get validation.
Roster = tuple[StudentId, ...]


def make_roster(ids: Iterable[StudentId]) -> Roster:
    roster = tuple(ids)
    if len(roster) < 1:
        raise ValueError("roster must contain at least one student")
    seen: set[str] = set()
    for sid in roster:
        if not sid:
            raise ValueError("student ids must be non-empty")
        if sid in seen:
            raise ValueError(f"duplicate student id in roster: {sid!r}")
        seen.add(sid)
    return roster


@dataclass(frozen=True)
class EvaluationRecord:
    """One peer vote: evaluator says evaluatee's most prominent role was `role`."""

    activity_id: str
    evaluator: StudentId
    evaluatee: StudentId
    role: Role
    timestamp: int

    def __post_init__(self):
        if self.evaluator == self.evaluatee:
            raise SelfEvaluation(f"{self.evaluator!r} cannot evaluate themself")

    @property
    def key(self) -> tuple[str, str, str]:
        """Identity triple; at most one record per triple is retained."""
        return (self.activity_id, self.evaluator, self.evaluatee)


@dataclass(frozen=True)
class EvaluationHistory:
    """Accumulated peer votes with per-student and per-role views.

    Append via ``add``/``extend`` which return new histories; a repeated
    (activity, evaluator, evaluatee) triple is treated as a correction and
    replaces the earlier record in place (last write wins).
    """

    records: tuple[EvaluationRecord, ...] = ()

    @staticmethod
    def from_records(records: Iterable[EvaluationRecord]) -> "EvaluationHistory":
        return EvaluationHistory().extend(records)

    def add(self, record: EvaluationRecord) -> "EvaluationHistory":
        return self.extend([record])

    def extend(self, new_records: Iterable[EvaluationRecord]) -> "EvaluationHistory":
        merged = list(self.records)
        index = {r.key: i for i, r in enumerate(merged)}
        for rec in new_records:
            pos = index.get(rec.key)
            if pos is None:
                index[rec.key] = len(merged)
                merged.append(rec)
            else:
                merged[pos] = rec
        return EvaluationHistory(tuple(merged))

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def _by_evaluatee(self) -> dict[StudentId, tuple[EvaluationRecord, ...]]:
        grouped: dict[StudentId, list[EvaluationRecord]] = {}
        for rec in self.records:
            grouped.setdefault(rec.evaluatee, []).append(rec)
        return {sid: tuple(recs) for sid, recs in grouped.items()}

    def per_student(self, evaluatee: StudentId) -> tuple[EvaluationRecord, ...]:
        """The slice of votes received by one student."""
        return self._by_evaluatee.get(evaluatee, ())

    def counts(self, evaluatee: StudentId) -> tuple[int, ...]:
        """Vote counts for one student, indexed by role ordinal."""
        counts = [0] * NUM_ROLES
        for rec in self.per_student(evaluatee):
            counts[rec.role] += 1
        return tuple(counts)

    @cached_property
    def global_counts(self) -> tuple[int, ...]:
        """Vote counts across every student, indexed by role ordinal."""
        counts = [0] * NUM_ROLES
        for rec in self.records:
            counts[rec.role] += 1
        return tuple(counts)

    def activity_order(self) -> tuple[str, ...]:
        """Activity ids in order of first appearance (chronological)."""
        seen: dict[str, None] = {}
        for rec in self.records:
            seen.setdefault(rec.activity_id, None)
        return tuple(seen)


@dataclass(frozen=True)
class Team:
    """A non-empty set of students working together."""

    members: frozenset[StudentId]

    def __post_init__(self):
        if not self.members:
            raise ValueError("a team must have at least one member")

    @staticmethod
    def of(members: Iterable[StudentId]) -> "Team":
        return Team(frozenset(members))

    @property
    def size(self) -> int:
        return len(self.members)

    @cached_property
    def ordered_members(self) -> tuple[StudentId, ...]:
        """Members in ascending StudentId order; aligns hypothesis vectors."""
        return tuple(sorted(self.members))

    def __contains__(self, sid: StudentId) -> bool:
        return sid in self.members


# An exhaustive disjoint partition of the roster into teams.
TeamStructure = tuple[Team, ...]

# One hypothesis assigning a predominant role to each team member, aligned
# with Team.ordered_members.
RoleHypothesisVector = tuple[Role, ...]


def hypothesis_vector(team: Team, roles_by_student: Mapping[StudentId, Role]) -> RoleHypothesisVector:
    return tuple(roles_by_student[sid] for sid in team.ordered_members)


def canonical_structure(teams: Iterable[Team]) -> TeamStructure:
    """Teams sorted by their ordered member tuple (stable, comparable form)."""
    return tuple(sorted(teams, key=lambda t: t.ordered_members))


def structure_is_disjoint(structure: Sequence[Team]) -> bool:
    total = sum(t.size for t in structure)
    union: set[StudentId] = set()
    for t in structure:
        union |= t.members
    return len(union) == total


def structure_is_exhaustive(structure: Sequence[Team], roster: Sequence[StudentId]) -> bool:
    union: set[StudentId] = set()
    for t in structure:
        union |= t.members
    return union == set(roster)


def structure_sizes_ok(structure: Sequence[Team], size_min: int, size_max: int) -> bool:
    return all(size_min <= t.size <= size_max for t in structure)


def validate_structure(structure: Sequence[Team], roster: Sequence[StudentId],
                       size_min: int, size_max: int) -> None:
    """Raise ValueError unless the structure is a size-bounded exhaustive partition."""
    problems = []
    if not structure_is_disjoint(structure):
        problems.append("teams overlap")
    if not structure_is_exhaustive(structure, roster):
        problems.append("teams do not cover the roster exactly")
    if not structure_sizes_ok(structure, size_min, size_max):
        problems.append(f"team sizes outside [{size_min}, {size_max}]")
    if problems:
        raise ValueError("invalid team structure: " + "; ".join(problems))
