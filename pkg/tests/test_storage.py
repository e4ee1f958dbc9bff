import json

import pytest

from teamforge.errors import (
    DuplicateStudent,
    NotFound,
    ParseError,
    SchemaVersionMismatch,
    UnknownRole,
)
from teamforge.pipeline import ActivityStatus
from teamforge.roles import Role
from teamforge.storage import (
    TeamStore,
    import_evaluations_csv,
    import_roster_csv,
    read_roster_csv,
)


def seeded_store(n=8):
    store = TeamStore()
    store.set_roster([(f"s{i}", f"Student {i}") for i in range(1, n + 1)])
    return store


def run_session(store, seed=7):
    """Create-allocate-publish-feedback-close one activity with a few votes."""
    act = store.create_activity("mod-1", "project", "2026-01-10", "2026-02-10", 4, 4, seed=seed)
    store.allocate_activity(act.activity_id)
    store.publish_activity(act.activity_id)
    store.open_feedback(act.activity_id)
    team = store.activities[act.activity_id].allocation[0].ordered_members
    store.ingest_evaluation(act.activity_id, team[0], team[1], "plant", timestamp=100)
    store.ingest_evaluation(act.activity_id, team[1], team[0], "shaper", timestamp=101,
                            survey={"satisfaction": 4})
    store.close_activity(act.activity_id)
    return act.activity_id


def test_empty_state_round_trip(tmp_path):
    path = tmp_path / "state.json"
    store = TeamStore()
    store.save_state(str(path))
    loaded = TeamStore.load_state(str(path))
    assert loaded.roster == ()
    assert loaded.activities == {}
    assert len(loaded.history) == 0


def test_full_state_round_trip_is_deep_equal(tmp_path):
    store = seeded_store()
    run_session(store)
    path = tmp_path / "state.json"
    store.save_state(str(path))
    loaded = TeamStore.load_state(str(path))

    assert loaded.roster == store.roster
    assert loaded.display_names == store.display_names
    assert loaded.activities == store.activities
    assert loaded.history == store.history
    assert loaded.surveys == store.surveys
    assert loaded.events == store.events


def test_saving_twice_is_byte_identical(tmp_path):
    store = seeded_store()
    run_session(store)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    store.save_state(str(p1))
    store.save_state(str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_reload_then_save_is_byte_identical(tmp_path):
    store = seeded_store()
    run_session(store)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    store.save_state(str(p1))
    TeamStore.load_state(str(p1)).save_state(str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_replay_reproduces_state_bytes(tmp_path):
    store = seeded_store()
    run_session(store)
    run_session(store, seed=9)
    p1, p2 = tmp_path / "live.json", tmp_path / "replayed.json"
    store.save_state(str(p1))
    TeamStore.replay(store.events).save_state(str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_event_sequence_numbers_increase():
    store = seeded_store()
    run_session(store)
    seqs = [e.seq for e in store.events]
    assert seqs == list(range(1, len(seqs) + 1))


def test_one_event_per_mutation():
    store = TeamStore()
    before = len(store.events)
    store.set_roster([(f"s{i}", "") for i in range(1, 9)])
    assert len(store.events) == before + 1
    act = store.create_activity("m", "d", "2026-01-01", "2026-02-01", 4, 4)
    assert len(store.events) == before + 2
    store.allocate_activity(act.activity_id)
    assert len(store.events) == before + 3
    # failed mutation appends nothing
    with pytest.raises(Exception):
        store.allocate_activity(act.activity_id)
    assert len(store.events) == before + 3


def test_unknown_schema_version_rejected(tmp_path):
    path = tmp_path / "state.json"
    store = TeamStore()
    store.save_state(str(path))
    data = json.loads(path.read_text())
    data["schema_version"] = "99"
    path.write_text(json.dumps(data))
    with pytest.raises(SchemaVersionMismatch):
        TeamStore.load_state(str(path))


def test_activity_ids_are_sequential():
    store = seeded_store()
    a1 = store.create_activity("m", "d", "2026-01-01", "2026-02-01", 4, 4)
    a2 = store.create_activity("m", "d", "2026-01-01", "2026-02-01", 4, 4)
    assert (a1.activity_id, a2.activity_id) == ("act-0001", "act-0002")
    with pytest.raises(NotFound):
        store.allocate_activity("act-9999")


def test_store_allocation_lifecycle_statuses():
    store = seeded_store()
    aid = run_session(store)
    assert store.activities[aid].status == ActivityStatus.Closed
    assert len(store.history) == 2
    assert store.history.records[0].role == Role.Plant


# -- CSV ingestion ------------------------------------------------------------


def test_import_roster_csv(tmp_path):
    path = tmp_path / "roster.csv"
    path.write_text("student_id,display_name\ns1,Alice\ns2,Bob\n")
    assert import_roster_csv(str(path)) == ("s1", "s2")
    _, names = read_roster_csv(str(path))
    assert names == {"s1": "Alice", "s2": "Bob"}


def test_import_roster_csv_duplicate(tmp_path):
    path = tmp_path / "roster.csv"
    path.write_text("student_id,display_name\ns1,Alice\ns2,Bob\ns3,Eve\ns4,Mallory\ns1,Again\n")
    with pytest.raises(DuplicateStudent) as err:
        import_roster_csv(str(path))
    assert err.value.line == 6


def test_import_roster_csv_missing_header(tmp_path):
    path = tmp_path / "roster.csv"
    path.write_text("id,name\ns1,Alice\n")
    with pytest.raises(ParseError) as err:
        import_roster_csv(str(path))
    assert err.value.line == 1
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ParseError):
        import_roster_csv(str(empty))


def test_import_evaluations_csv(tmp_path):
    path = tmp_path / "history.csv"
    path.write_text(
        "activity_id,evaluator,evaluatee,role,timestamp\n"
        "a1,s1,s2,plant,1700000000\n"
        "a1,s2,s1,CF,1700000001\n"
    )
    records = import_evaluations_csv(str(path))
    assert len(records) == 2
    assert records[0].role == Role.Plant
    assert records[1].role == Role.CompleterFinisher
    assert records[0].timestamp == 1700000000


def test_import_evaluations_csv_header_only(tmp_path):
    path = tmp_path / "history.csv"
    path.write_text("activity_id,evaluator,evaluatee,role,timestamp\n")
    assert import_evaluations_csv(str(path)) == []


def test_import_evaluations_csv_unknown_role(tmp_path):
    path = tmp_path / "history.csv"
    path.write_text(
        "activity_id,evaluator,evaluatee,role,timestamp\n"
        "a1,s1,s2,specialist,1700000000\n"
    )
    with pytest.raises(UnknownRole) as err:
        import_evaluations_csv(str(path))
    assert "line 2" in str(err.value)


def test_import_evaluations_csv_bad_timestamp(tmp_path):
    path = tmp_path / "history.csv"
    path.write_text(
        "activity_id,evaluator,evaluatee,role,timestamp\n"
        "a1,s1,s2,plant,yesterday\n"
    )
    with pytest.raises(ParseError) as err:
        import_evaluations_csv(str(path))
    assert err.value.line == 2
