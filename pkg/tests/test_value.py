import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from teamforge.errors import CapacityExceeded
from teamforge.roles import Role
from teamforge.value import (
    expected_team_value,
    expected_team_value_bruteforce,
    repeat_count,
    team_value,
)


def one_hot(role):
    v = np.zeros(8)
    v[role] = 1.0
    return v


@pytest.mark.parametrize("roles,expected", [
    ([Role.Plant, Role.Shaper, Role.Coordinator, Role.Teamworker], 0),
    ([Role.Plant, Role.Plant, Role.Coordinator, Role.Teamworker], 1),
    ([Role.Plant, Role.Plant, Role.Plant, Role.Teamworker], 2),
    ([Role.Plant, Role.Plant, Role.Plant, Role.Plant], 3),
    ([Role.Plant, Role.Plant, Role.Shaper, Role.Shaper], 2),
    ([Role.Plant], 0),
])
def test_repeat_count(roles, expected):
    assert repeat_count(roles) == expected


def test_team_value_ladder():
    assert team_value([Role.Plant, Role.Shaper, Role.Coordinator, Role.Teamworker]) == 1.0
    assert team_value([Role.Plant, Role.Plant, Role.Coordinator, Role.Teamworker]) == 0.5
    assert team_value([Role.Plant, Role.Plant, Role.Plant, Role.Teamworker]) == 0.25
    assert team_value([Role.Plant, Role.Plant, Role.Plant, Role.Plant]) == 0.125
    assert team_value([Role.Plant, Role.Plant, Role.Shaper, Role.Shaper]) == 0.25


def test_repeat_count_rejects_empty():
    with pytest.raises(ValueError):
        repeat_count([])


def test_single_member_is_always_one():
    rng = np.random.default_rng(0)
    for _ in range(10):
        p = rng.dirichlet(np.ones(8))
        assert expected_team_value_bruteforce([p]) == pytest.approx(1.0, abs=1e-12)
        assert expected_team_value([p]) == pytest.approx(1.0, abs=1e-12)


def test_two_member_half_half():
    p = np.zeros(8)
    p[Role.Plant] = p[Role.MonitorEvaluator] = 0.5
    assert expected_team_value_bruteforce([p, p]) == pytest.approx(0.75, abs=1e-12)
    assert expected_team_value([p, p]) == pytest.approx(0.75, abs=1e-12)


def test_certain_collision():
    p = one_hot(Role.Plant)
    assert expected_team_value_bruteforce([p, p]) == pytest.approx(0.5, abs=0)
    assert expected_team_value([p, p]) == pytest.approx(0.5, abs=1e-12)


def test_one_hot_distinct_roles_score_one():
    posteriors = [one_hot(r) for r in (Role.Plant, Role.Shaper, Role.Teamworker,
                                       Role.Implementer, Role.Coordinator)]
    assert expected_team_value(posteriors) == pytest.approx(1.0, abs=1e-12)


def test_deterministic_posteriors_match_team_value():
    roles = [Role.Plant, Role.Plant, Role.Shaper, Role.Coordinator]
    posteriors = [one_hot(r) for r in roles]
    assert expected_team_value(posteriors) == pytest.approx(team_value(roles), abs=1e-12)
    assert expected_team_value_bruteforce(posteriors) == pytest.approx(team_value(roles), abs=1e-12)


def test_brute_force_capacity_cap():
    p = np.full(8, 0.125)
    with pytest.raises(CapacityExceeded):
        expected_team_value_bruteforce([p] * 9, cap=10 ** 7)
    # a generous cap admits the same size
    assert expected_team_value_bruteforce([p] * 3, cap=10 ** 7) > 0


def test_uniform_team_of_six_matches_brute_force():
    u = np.full(8, 0.125)
    bf = expected_team_value_bruteforce([u] * 6)
    ie = expected_team_value([u] * 6)
    assert ie == pytest.approx(bf, abs=1e-9)


@settings(max_examples=120, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=5),
    raw=arrays(np.float64, shape=(5, 8),
               elements=st.floats(min_value=1e-3, max_value=1.0)),
)
def test_inclusion_exclusion_matches_brute_force(k, raw):
    posteriors = raw[:k] / raw[:k].sum(axis=1, keepdims=True)
    bf = expected_team_value_bruteforce(posteriors)
    ie = expected_team_value(posteriors)
    assert ie == pytest.approx(bf, abs=1e-9)
    assert 1.0 / 2 ** (k - 1) - 1e-12 <= ie <= 1.0 + 1e-12


@settings(max_examples=60, deadline=None)
@given(
    raw=arrays(np.float64, shape=(4, 8),
               elements=st.floats(min_value=1e-3, max_value=1.0)),
    member_perm=st.permutations(list(range(4))),
    role_perm=st.permutations(list(range(8))),
)
def test_expected_value_permutation_invariance(raw, member_perm, role_perm):
    posteriors = raw / raw.sum(axis=1, keepdims=True)
    base = expected_team_value(posteriors)
    shuffled_members = posteriors[member_perm]
    assert expected_team_value(shuffled_members) == pytest.approx(base, abs=1e-12)
    relabeled = posteriors[:, role_perm]
    assert expected_team_value(relabeled) == pytest.approx(base, abs=1e-9)
