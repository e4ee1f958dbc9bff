"""Partitioning a roster into teams that maximize summed expected value.

Two solvers share the objective (sum of per-team expected values):

- ``solve_exact``: dynamic programming over member subsets, anchored on the
  lowest-indexed unassigned student so each partition is enumerated once.
  Globally optimal; capped at a configurable roster size.
- ``solve_heuristic``: anytime local search (greedy construction seeded by
  MAP roles, steepest swap/relocate descent, shuffled restarts). Returns
  the best structure found within an iteration/time budget; deterministic
  for a fixed seed and iteration budget.

Students are indexed in ascending StudentId order everywhere, and ties
between equal-value choices resolve to the lexicographically smallest team
(by sorted member indices), so outputs are unique and reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .errors import CapacityExceeded, Infeasible
from .roles import NUM_ROLES, Roster, StudentId, Team, TeamStructure
from .value import _MEMBERSHIP, _POPCOUNT, expected_team_value

EXACT_CAP_DEFAULT = 20
_IMPROVE_EPS = 1e-12


@dataclass(frozen=True)
class SizeBounds:
    size_min: int
    size_max: int

    def __post_init__(self):
        if not (1 <= self.size_min <= self.size_max):
            raise ValueError(f"need 1 <= size_min <= size_max, got [{self.size_min}, {self.size_max}]")


@dataclass(frozen=True)
class SolveBudget:
    """Stopping rule for the heuristic: iteration cap and optional wall-clock cap."""

    max_iterations: int = 2000
    max_millis: int | None = None


@dataclass(frozen=True)
class SolveReport:
    structure: TeamStructure
    value: float
    method: str                      # "exact" | "heuristic" | "random"
    optimal: bool
    iterations: int
    wall_time_ms: float
    trace: tuple[float, ...] = field(default=(), repr=False)


def feasible(n: int, bounds: SizeBounds) -> bool:
    """True iff n students can be split into teams within the size bounds."""
    if n == 0:
        return True
    t = n // bounds.size_min
    return t >= 1 and n <= t * bounds.size_max


def size_profile(n: int, bounds: SizeBounds) -> list[int]:
    """Team sizes used by construction: as many size_min teams as possible,
    remainder handed out one member at a time round-robin (up to size_max)."""
    if not feasible(n, bounds):
        raise Infeasible(f"cannot split {n} students into teams of [{bounds.size_min}, {bounds.size_max}]")
    if n == 0:
        return []
    t = n // bounds.size_min
    sizes = [bounds.size_min] * t
    for i in range(n - t * bounds.size_min):
        sizes[i % t] += 1
    return sizes


def random_structure(roster: Roster, bounds: SizeBounds, seed: int) -> TeamStructure:
    """Seeded uniform shuffle of the roster, cut into the size profile."""
    sizes = size_profile(len(roster), bounds)
    rng = np.random.default_rng(seed)
    shuffled = [roster[i] for i in rng.permutation(len(roster))]
    teams = []
    at = 0
    for size in sizes:
        teams.append(Team.of(shuffled[at:at + size]))
        at += size
    return tuple(teams)


def structure_value(structure: Sequence[Team], posteriors: Mapping[StudentId, np.ndarray]) -> float:
    """Objective: sum of per-team expected values (teams are independent)."""
    return float(sum(
        expected_team_value([posteriors[sid] for sid in team.ordered_members])
        for team in structure
    ))


class _TeamValues:
    """Memoized expected value of index-tuple teams over a posterior matrix."""

    def __init__(self, matrix: np.ndarray):
        self.matrix = matrix
        self.cache: dict[tuple[int, ...], float] = {}

    def __call__(self, team: tuple[int, ...]) -> float:
        val = self.cache.get(team)
        if val is None:
            val = expected_team_value(self.matrix[list(team)])
            self.cache[team] = val
        return val


def _indexed(posteriors: Mapping[StudentId, np.ndarray]) -> tuple[list[StudentId], np.ndarray]:
    students = sorted(posteriors)
    matrix = np.asarray([posteriors[s] for s in students], dtype=float)
    return students, matrix


def _to_structure(students: Sequence[StudentId], teams: Sequence[tuple[int, ...]]) -> TeamStructure:
    return tuple(Team.of(students[i] for i in team) for team in teams)


def _bulk_team_values(matrix: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Expected values of every `size`-member team, vectorized.

    Collapsing the Moebius inversion into fixed subset weights turns the
    per-team expectation into a single dot product: for k members,
    E[v] = sum_Q P(all roles in Q) * (-1)^(m-|Q|) * 2^(|Q|-k), which agrees
    with expected_team_value to floating-point noise (covered by the
    oracle-equivalence tests). Returns (index rows, bitmasks, values).
    """
    n = matrix.shape[0]
    idx = np.array(list(combinations(range(n), size)), dtype=np.int64)
    within = matrix @ _MEMBERSHIP.T                      # (n, 256)
    covered = np.ones((idx.shape[0], _MEMBERSHIP.shape[0]))
    for j in range(size):
        covered *= within[idx[:, j]]
    weights = (-1.0) ** (NUM_ROLES - _POPCOUNT) * 2.0 ** (_POPCOUNT - size)
    masks = (np.int64(1) << idx).sum(axis=1)
    return idx, masks, covered @ weights


_POP8 = np.array([bin(b).count("1") for b in range(256)], dtype=np.int64)


def _popcount(arr: np.ndarray) -> np.ndarray:
    return (_POP8[arr & 255] + _POP8[(arr >> 8) & 255]
            + _POP8[(arr >> 16) & 255] + _POP8[(arr >> 24) & 255])


def solve_exact(posteriors: Mapping[StudentId, np.ndarray], bounds: SizeBounds,
                cap: int = EXACT_CAP_DEFAULT) -> SolveReport:
    """Globally optimal partition by dynamic programming over member subsets.

    Each state is the set of still-unassigned students; its candidate teams
    are the size-feasible subsets containing the lowest-indexed member, so
    every partition is generated exactly once. Memory grows as 2^n, so the
    roster cap guards the call (raise `cap` deliberately).
    """
    t0 = time.perf_counter()
    students, matrix = _indexed(posteriors)
    n = len(students)
    if not feasible(n, bounds):
        raise Infeasible(f"cannot split {n} students into teams of [{bounds.size_min}, {bounds.size_max}]")
    if n > cap:
        raise CapacityExceeded(f"exact solver capped at {cap} students, got {n}")
    if n == 0:
        return SolveReport(structure=(), value=0.0, method="exact", optimal=True,
                           iterations=0, wall_time_ms=(time.perf_counter() - t0) * 1000.0)

    # candidate teams grouped by their lowest member, sizes pre-valued in bulk
    by_low: list[tuple[list[np.ndarray], list[np.ndarray], list[np.ndarray]]] = [
        ([], [], []) for _ in range(n)
    ]
    for size in range(bounds.size_min, min(bounds.size_max, n) + 1):
        idx, masks, vals = _bulk_team_values(matrix, size)
        lowest = idx[:, 0]
        for low in range(n):
            sel = lowest == low
            if sel.any():
                by_low[low][0].append(masks[sel])
                by_low[low][1].append(np.full(int(sel.sum()), size, dtype=np.int64))
                by_low[low][2].append(vals[sel])
    groups = [
        (np.concatenate(m) if m else np.empty(0, dtype=np.int64),
         np.concatenate(p) if p else np.empty(0, dtype=np.int64),
         np.concatenate(v) if v else np.empty(0))
        for m, p, v in by_low
    ]

    feasible_count = np.array([feasible(c, bounds) for c in range(n + 1)])
    full = (1 << n) - 1
    memo = np.full(full + 1, np.nan)
    memo[0] = 0.0
    chosen = np.zeros(full + 1, dtype=np.int64)

    def candidates(mask: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Size-feasible teams anchored on mask's lowest member, with the
        remainder they leave; remainders with no feasible size split are
        pruned (popcount(remainder) = popcount(mask) - team size)."""
        low = (mask & -mask).bit_length() - 1
        masks, pcs, vals = groups[low]
        inside = (masks & ~mask) == 0
        tmasks, tvals = masks[inside], vals[inside]
        ok = feasible_count[mask.bit_count() - pcs[inside]]
        tmasks, tvals = tmasks[ok], tvals[ok]
        return tmasks, tvals, mask ^ tmasks

    # phase 1: discover the reachable states (each child's remainder is the
    # parent minus one anchored team, so popcounts strictly decrease)
    seen = np.zeros(full + 1, dtype=bool)
    seen[full] = seen[0] = True
    queue = [full]
    at = 0
    while at < len(queue):
        mask = queue[at]
        at += 1
        _, _, rem = candidates(mask)
        fresh = rem[~seen[rem]]
        seen[fresh] = True
        queue.extend(fresh.tolist())

    # phase 2: evaluate in ascending-popcount order, children always first
    ordered = np.array(queue, dtype=np.int64)
    ordered = ordered[np.argsort(_popcount(ordered), kind="stable")]
    for mask_i in ordered.tolist():
        mask = int(mask_i)
        tmasks, tvals, rem = candidates(mask)
        if tmasks.size == 0:
            memo[mask] = -np.inf
            continue
        cand = tvals + memo[rem]
        best = cand.max()
        if not np.isfinite(best):
            memo[mask] = -np.inf
            continue
        ties = np.nonzero(cand == best)[0]
        pick = int(ties[0])
        if ties.size > 1:
            # equal totals: prefer the lexicographically smallest team
            def members(i: int) -> tuple[int, ...]:
                m = int(tmasks[i])
                return tuple(b for b in range(n) if (m >> b) & 1)
            pick = min((int(i) for i in ties), key=members)
        memo[mask] = best
        chosen[mask] = tmasks[pick]

    value = float(memo[full])
    if not np.isfinite(value):  # unreachable given the feasibility pre-check
        raise Infeasible("no size-feasible partition exists")

    teams = []
    mask = full
    while mask:
        tmask = int(chosen[mask])
        teams.append(tuple(b for b in range(n) if (tmask >> b) & 1))
        mask ^= tmask
    return SolveReport(
        structure=_to_structure(students, teams),
        value=value,
        method="exact",
        optimal=True,
        iterations=len(queue),
        wall_time_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _greedy_construction(map_role_of: Sequence[int], sizes: Sequence[int]) -> list[list[int]]:
    """Deal students to teams so same-MAP-role students land apart.

    Role groups are processed largest first (ties by role ordinal) and each
    student goes to the next team, cyclically, with spare capacity.
    """
    groups: dict[int, list[int]] = {}
    for idx, role in enumerate(map_role_of):
        groups.setdefault(role, []).append(idx)
    ordered = sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    t = len(sizes)
    teams: list[list[int]] = [[] for _ in range(t)]
    cursor = 0
    for _, members in ordered:
        for idx in members:
            for probe in range(t):
                slot = (cursor + probe) % t
                if len(teams[slot]) < sizes[slot]:
                    teams[slot].append(idx)
                    cursor = (slot + 1) % t
                    break
    return teams


def solve_heuristic(posteriors: Mapping[StudentId, np.ndarray], bounds: SizeBounds,
                    seed: int = 0, budget: SolveBudget | None = None) -> SolveReport:
    """Anytime local search over swap and relocate moves.

    Each iteration is one steepest-descent scan: every relocate (member to
    another team with spare capacity) and every cross-team swap is scored,
    and the single best improving move is applied. When no move improves,
    the search restarts from a shuffled construction until the budget runs
    out. Best-so-far never decreases.
    """
    t0 = time.perf_counter()
    budget = budget or SolveBudget()
    students, matrix = _indexed(posteriors)
    n = len(students)
    if not feasible(n, bounds):
        raise Infeasible(f"cannot split {n} students into teams of [{bounds.size_min}, {bounds.size_max}]")

    sizes = size_profile(n, bounds)
    t = len(sizes)
    rng = np.random.default_rng(seed)
    team_val = _TeamValues(matrix)
    deadline = None if budget.max_millis is None else t0 + budget.max_millis / 1000.0

    def out_of_time() -> bool:
        return deadline is not None and time.perf_counter() >= deadline

    map_roles = [int(np.argmax(matrix[i])) for i in range(n)]

    best_teams: list[tuple[int, ...]] = []
    best_value = -np.inf
    trace: list[float] = []
    iterations = 0

    def record(teams: list[tuple[int, ...]], value: float) -> None:
        nonlocal best_teams, best_value
        if value > best_value:
            best_value = value
            best_teams = list(teams)

    def descend(raw_teams: list[list[int]]) -> None:
        nonlocal iterations
        teams = [tuple(sorted(members)) for members in raw_teams]
        values = [team_val(team) for team in teams]
        record(teams, sum(values))
        trace.append(best_value)
        while iterations < budget.max_iterations and not out_of_time():
            iterations += 1
            best_delta = _IMPROVE_EPS
            best_move = None
            for a in range(t):
                if out_of_time():
                    break
                for b in range(t):
                    if a == b:
                        continue
                    # relocate one member of a into b
                    if len(teams[a]) > bounds.size_min and len(teams[b]) < bounds.size_max:
                        for i in teams[a]:
                            na = tuple(x for x in teams[a] if x != i)
                            nb = tuple(sorted(teams[b] + (i,)))
                            delta = team_val(na) + team_val(nb) - values[a] - values[b]
                            if delta > best_delta:
                                best_delta, best_move = delta, (a, b, na, nb)
                    # swaps are symmetric; scan each unordered pair once
                    if a < b:
                        for i in teams[a]:
                            for j in teams[b]:
                                na = tuple(sorted(x for x in teams[a] if x != i) + [j])
                                nb = tuple(sorted(x for x in teams[b] if x != j) + [i])
                                delta = team_val(na) + team_val(nb) - values[a] - values[b]
                                if delta > best_delta:
                                    best_delta, best_move = delta, (a, b, na, nb)
            if best_move is None:
                trace.append(best_value)
                break
            a, b, na, nb = best_move
            teams[a], teams[b] = na, nb
            values[a], values[b] = team_val(na), team_val(nb)
            record(teams, sum(values))
            trace.append(best_value)

    descend(_greedy_construction(map_roles, sizes))
    while iterations < budget.max_iterations and not out_of_time():
        order = [int(i) for i in rng.permutation(n)]
        shuffled = []
        at = 0
        for size in sizes:
            shuffled.append(order[at:at + size])
            at += size
        descend(shuffled)

    return SolveReport(
        structure=_to_structure(students, best_teams),
        value=float(best_value),
        method="heuristic",
        optimal=False,
        iterations=iterations,
        wall_time_ms=(time.perf_counter() - t0) * 1000.0,
        trace=tuple(trace),
    )
