"""Per-student role posteriors from peer evaluations.

Each student's probability of having a given predominant role is the
normalized product of a smoothed per-student likelihood (their own received
votes) and a smoothed classroom-wide prior (all votes). Laplace smoothing
keeps every entry strictly positive, so posteriors are well defined from
the very first activity, before any votes exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .roles import NUM_ROLES, EvaluationHistory, Role, Roster, StudentId

# A posterior is a length-8 probability vector indexed by role ordinal.
RolePosterior = np.ndarray


@dataclass(frozen=True)
class SmoothingConfig:
    """Additive (Laplace) smoothing strength; alpha=1 is add-one."""

    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("smoothing alpha must be > 0")


DEFAULT_SMOOTHING = SmoothingConfig()


def _smoothed(counts: Sequence[int], alpha: float) -> np.ndarray:
    counts = np.asarray(counts, dtype=float)
    return (counts + alpha) / (counts.sum() + alpha * NUM_ROLES)


def likelihood(history: EvaluationHistory, student: StudentId, role: Role,
               cfg: SmoothingConfig = DEFAULT_SMOOTHING) -> float:
    """Smoothed share of the student's received votes naming `role`."""
    return float(_smoothed(history.counts(student), cfg.alpha)[role])


def prior(history: EvaluationHistory, role: Role,
          cfg: SmoothingConfig = DEFAULT_SMOOTHING) -> float:
    """Smoothed share of all votes in the classroom naming `role`."""
    return float(_smoothed(history.global_counts, cfg.alpha)[role])


def posterior(history: EvaluationHistory, student: StudentId,
              cfg: SmoothingConfig = DEFAULT_SMOOTHING) -> RolePosterior:
    """Probability vector over the 8 roles for one student.

    posterior[r] is proportional to likelihood(student, r) * prior(r),
    renormalized over roles. All entries are strictly positive and the
    vector sums to 1.
    """
    like = _smoothed(history.counts(student), cfg.alpha)
    pri = _smoothed(history.global_counts, cfg.alpha)
    unnorm = like * pri
    return unnorm / unnorm.sum()


def posteriors_for_roster(history: EvaluationHistory, roster: Roster,
                          cfg: SmoothingConfig = DEFAULT_SMOOTHING) -> dict[StudentId, RolePosterior]:
    pri = _smoothed(history.global_counts, cfg.alpha)
    out: dict[StudentId, RolePosterior] = {}
    for sid in roster:
        unnorm = _smoothed(history.counts(sid), cfg.alpha) * pri
        out[sid] = unnorm / unnorm.sum()
    return out


def map_role(p: Sequence[float] | RolePosterior) -> Role:
    """Most probable role; ties resolve to the lowest role ordinal."""
    return Role(int(np.argmax(np.asarray(p))))


def map_roles(posteriors: Mapping[StudentId, RolePosterior]) -> dict[StudentId, Role]:
    return {sid: map_role(p) for sid, p in posteriors.items()}


def validate_posterior(p: RolePosterior, tol: float = 1e-9) -> None:
    """Raise ValueError unless p is a strictly positive length-8 distribution."""
    arr = np.asarray(p, dtype=float)
    if arr.shape != (NUM_ROLES,):
        raise ValueError(f"posterior must have shape ({NUM_ROLES},), got {arr.shape}")
    if abs(float(arr.sum()) - 1.0) > tol:
        raise ValueError(f"posterior sums to {arr.sum()!r}, not 1")
    if not (arr > 0).all():
        raise ValueError("posterior entries must be strictly positive")


def uniform_posterior() -> RolePosterior:
    return np.full(NUM_ROLES, 1.0 / NUM_ROLES)
