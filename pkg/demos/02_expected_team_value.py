"""Scoring teams by role heterogeneity, with and without uncertainty.

A team's efficiency is 1 / 2^(number of repeated roles): four distinct
roles score 1.0, one duplicated role halves that, and so on. When roles
are only known as probability distributions, the efficiency becomes an
expectation over all 8^k role assignments. The inclusion-exclusion fast
path computes it exactly without enumerating them; the brute-force
enumerator is kept as the oracle.
"""

import time

import numpy as np

from teamforge import (
    Role,
    expected_team_value,
    expected_team_value_bruteforce,
    team_value,
)

print("== the deterministic efficiency ladder (k = 4) ==")
ladder = [
    ("all distinct", [Role.Plant, Role.Shaper, Role.Coordinator, Role.Teamworker]),
    ("one pair    ", [Role.Plant, Role.Plant, Role.Coordinator, Role.Teamworker]),
    ("one triple  ", [Role.Plant, Role.Plant, Role.Plant, Role.Teamworker]),
    ("all same    ", [Role.Plant, Role.Plant, Role.Plant, Role.Plant]),
    ("two pairs   ", [Role.Plant, Role.Plant, Role.Shaper, Role.Shaper]),
]
for label, roles in ladder:
    print(f"  {label} -> {team_value(roles):.3f}")

print("\n== uncertainty: two members, each 50/50 Plant or MonitorEvaluator ==")
p = np.zeros(8)
p[Role.Plant] = p[Role.MonitorEvaluator] = 0.5
print(f"  expected value = {expected_team_value([p, p]):.4f}")
print("  (half the time they collide at 0.5, half they differ at 1.0)")

print("\n== fast path vs brute force on random teams ==")
rng = np.random.default_rng(0)
for k in (2, 4, 6):
    posteriors = rng.dirichlet(np.ones(8), size=k)
    t0 = time.perf_counter()
    brute = expected_team_value_bruteforce(posteriors)
    t_brute = time.perf_counter() - t0
    t0 = time.perf_counter()
    fast = expected_team_value(posteriors)
    t_fast = time.perf_counter() - t0
    print(f"  k={k}: brute {brute:.12f} ({8 ** k:>6d} terms, {t_brute * 1e3:7.2f} ms)"
          f"  fast {fast:.12f} ({t_fast * 1e3:5.2f} ms)  |diff| = {abs(brute - fast):.2e}")

print("\n== sharper posteriors earn higher expected value ==")
for concentration in (1.0, 5.0, 25.0):
    team = []
    for i in range(4):
        weights = np.ones(8)
        weights[i] = concentration  # member i leans toward role i
        team.append(weights / weights.sum())
    print(f"  lean x{concentration:<4} -> {expected_team_value(team):.4f}")
print("  (as members' likely roles separate, the team approaches 1.0)")
