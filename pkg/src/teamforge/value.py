"""Team efficiency from role heterogeneity, deterministic and in expectation.

A team whose members all play distinct predominant roles scores 1; every
repeated role halves the score. Under role uncertainty the score is the
expectation of that efficiency over the members' independent role
posteriors. Two routes compute the expectation:

- ``expected_team_value_bruteforce`` enumerates all 8^k role assignments
  (the testing oracle, exact but exponential in team size);
- ``expected_team_value`` runs inclusion-exclusion over the 256 role
  subsets (exact, cost independent of 8^k).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import CapacityExceeded
from .roles import NUM_ROLES, RoleHypothesisVector

BRUTE_FORCE_CAP = 10_000_000

_SUBSETS = np.arange(1 << NUM_ROLES)
# membership[q, r] = 1 iff role r is in subset q
_MEMBERSHIP = ((_SUBSETS[:, None] >> np.arange(NUM_ROLES)[None, :]) & 1).astype(float)
_POPCOUNT = np.array([bin(q).count("1") for q in _SUBSETS])


def repeat_count(pi: RoleHypothesisVector | Sequence[int]) -> int:
    """Number of repeated roles: team size minus distinct roles."""
    if len(pi) < 1:
        raise ValueError("hypothesis vector must be non-empty")
    return len(pi) - len(set(pi))


def team_value(pi: RoleHypothesisVector | Sequence[int]) -> float:
    """Efficiency 1 / 2^repeat_count: 1 for all-distinct, halved per repeat."""
    return 1.0 / (1 << repeat_count(pi))


def _as_matrix(posteriors: Sequence[np.ndarray]) -> np.ndarray:
    mat = np.asarray(posteriors, dtype=float)
    if mat.ndim != 2 or mat.shape[1] != NUM_ROLES:
        raise ValueError(f"expected (k, {NUM_ROLES}) posterior matrix, got {mat.shape}")
    if mat.shape[0] < 1:
        raise ValueError("need at least one member")
    return mat


def expected_team_value_bruteforce(posteriors: Sequence[np.ndarray],
                                   cap: int = BRUTE_FORCE_CAP) -> float:
    """Exact expectation by enumerating every role assignment.

    Raises CapacityExceeded when 8^k exceeds `cap` (default 10^7).
    """
    mat = _as_matrix(posteriors)
    k = mat.shape[0]
    total = NUM_ROLES ** k
    if total > cap:
        raise CapacityExceeded(f"8^{k} = {total} exceeds enumeration cap {cap}")

    codes = np.arange(total)
    mass = np.ones(total)
    used = np.zeros(total, dtype=np.int64)
    for i in range(k):
        roles_i = (codes // (NUM_ROLES ** i)) % NUM_ROLES
        mass *= mat[i, roles_i]
        used |= np.int64(1) << roles_i
    distinct = _POPCOUNT[used]
    values = 2.0 ** (distinct - k)
    return float(np.dot(mass, values))


def expected_team_value(posteriors: Sequence[np.ndarray]) -> float:
    """Exact expectation via inclusion-exclusion over role subsets.

    For each subset Q of roles, P(every member's role lies in Q) is the
    product of per-member masses on Q; Moebius inversion over the subset
    lattice turns these into P(the set of used roles is exactly Q), and the
    efficiency of a team using |Q| distinct roles is 2^(|Q|-k).
    """
    mat = _as_matrix(posteriors)
    k = mat.shape[0]

    within = mat @ _MEMBERSHIP.T          # (k, 256): per-member mass on each subset
    covered = within.prod(axis=0)         # P(all roles in Q)
    exact = covered.copy()                # Moebius inversion, one bit at a time
    for b in range(NUM_ROLES):
        hi = np.nonzero((_SUBSETS >> b) & 1)[0]
        exact[hi] -= exact[hi ^ (1 << b)]
    return float(exact @ 2.0 ** (_POPCOUNT - k))
