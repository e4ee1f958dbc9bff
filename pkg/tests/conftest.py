import numpy as np
import pytest

from teamforge.roles import EvaluationHistory, EvaluationRecord, Role


def votes_for(evaluatee, role_counts, activity="a1", ts_start=0):
    """Records giving `evaluatee` the requested number of votes per role,
    each from a distinct synthetic evaluator."""
    records = []
    ts = ts_start
    n = 0
    for role, count in role_counts.items():
        for _ in range(count):
            n += 1
            ts += 1
            records.append(EvaluationRecord(
                activity_id=activity,
                evaluator=f"rater-{evaluatee}-{n}",
                evaluatee=evaluatee,
                role=role,
                timestamp=ts,
            ))
    return records


@pytest.fixture
def plant_monitor_history():
    """The reference fixture: one student with votes {Plant: 2, MonitorEvaluator: 1}."""
    return EvaluationHistory.from_records(
        votes_for("s1", {Role.Plant: 2, Role.MonitorEvaluator: 1})
    )


def random_history(rng, students, max_votes=12, n_activities=3):
    records = []
    ts = 0
    for sid in students:
        for _ in range(int(rng.integers(0, max_votes + 1))):
            ts += 1
            records.append(EvaluationRecord(
                activity_id=f"a{int(rng.integers(1, n_activities + 1))}",
                evaluator=f"rater-{ts}",
                evaluatee=sid,
                role=Role(int(rng.integers(8))),
                timestamp=ts,
            ))
    return EvaluationHistory.from_records(records)


def random_posteriors(rng, students):
    return {sid: rng.dirichlet(np.ones(8)) for sid in students}
