"""Durable, replayable persistence: event log, state file, CSV ingestion.

State mutates only by applying events, so replaying the append-only log
from an empty store reproduces the live store exactly, byte for byte once
saved. The state file is canonical JSON (sorted keys, fixed indentation):
saving the same state twice yields identical bytes.
"""

from __future__ import annotations

import csv
import json
import os
import threading
import time
from dataclasses import dataclass, replace
from typing import Any, Iterable, Mapping

from . import pipeline
from .errors import (
    DuplicateStudent,
    NotFound,
    ParseError,
    SchemaVersionMismatch,
    UnknownRole,
)
from .pipeline import Activity, ActivityStatus, AllocationConfig
from .roles import (
    EvaluationHistory,
    EvaluationRecord,
    Roster,
    StudentId,
    Team,
    make_roster,
    role_from_label,
)
from .solver import SizeBounds

SCHEMA_VERSION = "1"

EVENT_ROSTER_UPDATED = "RosterUpdated"
EVENT_ACTIVITY_CREATED = "ActivityCreated"
EVENT_ALLOCATED = "Allocated"
EVENT_PUBLISHED = "Published"
EVENT_FEEDBACK_OPENED = "FeedbackOpened"
EVENT_EVALUATION_INGESTED = "EvaluationIngested"
EVENT_CLOSED = "Closed"


@dataclass(frozen=True)
class Event:
    seq: int
    type: str
    payload: dict[str, Any]


def _activity_to_dict(act: Activity) -> dict[str, Any]:
    return {
        "activity_id": act.activity_id,
        "module_id": act.module_id,
        "description": act.description,
        "start_date": act.start_date,
        "end_date": act.end_date,
        "size_min": act.bounds.size_min,
        "size_max": act.bounds.size_max,
        "seed": act.seed,
        "status": act.status.value,
        "allocation": None if act.allocation is None
        else [list(team.ordered_members) for team in act.allocation],
        "allocation_method": act.allocation_method,
        "allocation_value": act.allocation_value,
    }


def _activity_from_dict(data: Mapping[str, Any]) -> Activity:
    allocation = data.get("allocation")
    return Activity(
        activity_id=data["activity_id"],
        module_id=data["module_id"],
        description=data["description"],
        start_date=data["start_date"],
        end_date=data["end_date"],
        bounds=SizeBounds(data["size_min"], data["size_max"]),
        seed=data["seed"],
        status=ActivityStatus(data["status"]),
        allocation=None if allocation is None
        else tuple(Team.of(members) for members in allocation),
        allocation_method=data.get("allocation_method"),
        allocation_value=data.get("allocation_value"),
    )


def _record_to_dict(rec: EvaluationRecord, survey: Any = None) -> dict[str, Any]:
    out = {
        "activity_id": rec.activity_id,
        "evaluator": rec.evaluator,
        "evaluatee": rec.evaluatee,
        "role": rec.role.label,
        "timestamp": rec.timestamp,
    }
    if survey is not None:
        out["survey"] = survey
    return out


def _record_from_dict(data: Mapping[str, Any]) -> EvaluationRecord:
    return EvaluationRecord(
        activity_id=data["activity_id"],
        evaluator=data["evaluator"],
        evaluatee=data["evaluatee"],
        role=role_from_label(data["role"]),
        timestamp=int(data["timestamp"]),
    )


class TeamStore:
    """Single-writer store for one classroom: roster, activities, votes, events.

    Every mutator validates against current state, appends exactly one event
    and applies it; concurrent mutators are serialized by an internal lock.
    Readers see plain immutable values.
    """

    def __init__(self, cfg: AllocationConfig | None = None):
        self.cfg = cfg or AllocationConfig()
        self.roster: Roster = ()
        self.display_names: dict[StudentId, str] = {}
        self.activities: dict[str, Activity] = {}
        self.history: EvaluationHistory = EvaluationHistory()
        self.surveys: dict[tuple[str, str, str], Any] = {}
        self.events: list[Event] = []
        self._created_count = 0
        self._lock = threading.RLock()

    # -- event machinery ---------------------------------------------------

    def _append(self, type_: str, payload: dict[str, Any]) -> Event:
        event = Event(seq=len(self.events) + 1, type=type_, payload=payload)
        self._apply(event)
        self.events.append(event)
        return event

    def _apply(self, event: Event) -> None:
        """Pure state transition; used live and during replay."""
        p = event.payload
        if event.type == EVENT_ROSTER_UPDATED:
            ids = [s["student_id"] for s in p["students"]]
            self.roster = make_roster(ids) if ids else ()
            self.display_names = {s["student_id"]: s.get("display_name", "")
                                  for s in p["students"]}
        elif event.type == EVENT_ACTIVITY_CREATED:
            act = _activity_from_dict(p)
            self.activities[act.activity_id] = act
            self._created_count += 1
        elif event.type == EVENT_ALLOCATED:
            act = self.activities[p["activity_id"]]
            structure = tuple(Team.of(members) for members in p["allocation"])
            self.activities[act.activity_id] = replace(
                act,
                seed=p["seed"],
                status=ActivityStatus.Allocated,
                allocation=structure,
                allocation_method=p["method"],
                allocation_value=p["value"],
            )
        elif event.type == EVENT_PUBLISHED:
            act = self.activities[p["activity_id"]]
            self.activities[act.activity_id] = replace(act, status=ActivityStatus.Published)
        elif event.type == EVENT_FEEDBACK_OPENED:
            act = self.activities[p["activity_id"]]
            self.activities[act.activity_id] = replace(act, status=ActivityStatus.FeedbackOpen)
        elif event.type == EVENT_EVALUATION_INGESTED:
            rec = _record_from_dict(p)
            self.history = self.history.add(rec)
            if "survey" in p:
                self.surveys[rec.key] = p["survey"]
        elif event.type == EVENT_CLOSED:
            act = self.activities[p["activity_id"]]
            self.activities[act.activity_id] = replace(act, status=ActivityStatus.Closed)
        else:
            raise ValueError(f"unknown event type: {event.type!r}")

    @classmethod
    def replay(cls, events: Iterable[Event], cfg: AllocationConfig | None = None) -> "TeamStore":
        """Rebuild a store from scratch by folding an event log."""
        store = cls(cfg)
        for event in events:
            store._apply(event)
            store.events.append(event)
        return store

    # -- mutators (one event each) ------------------------------------------

    def set_roster(self, students: Iterable[tuple[StudentId, str]]) -> Roster:
        with self._lock:
            entries = [{"student_id": sid, "display_name": name} for sid, name in students]
            make_roster([e["student_id"] for e in entries])  # validate before committing
            self._append(EVENT_ROSTER_UPDATED, {"students": entries})
            return self.roster

    def create_activity(self, module_id: str, description: str, start_date: str,
                        end_date: str, size_min: int, size_max: int,
                        seed: int = 0) -> Activity:
        with self._lock:
            activity_id = f"act-{self._created_count + 1:04d}"
            act = Activity(
                activity_id=activity_id,
                module_id=module_id,
                description=description,
                start_date=start_date,
                end_date=end_date,
                bounds=SizeBounds(size_min, size_max),
                seed=seed,
            )
            self._append(EVENT_ACTIVITY_CREATED, _activity_to_dict(act))
            return self.activities[activity_id]

    def _get(self, activity_id: str) -> Activity:
        act = self.activities.get(activity_id)
        if act is None:
            raise NotFound(f"no such activity: {activity_id!r}")
        return act

    def allocate_activity(self, activity_id: str, seed: int | None = None) -> Activity:
        with self._lock:
            act = self._get(activity_id)
            if seed is not None:
                act = replace(act, seed=seed)
            allocated = pipeline.allocate(act, self.roster, self.history, self.cfg)
            self._append(EVENT_ALLOCATED, {
                "activity_id": activity_id,
                "seed": allocated.seed,
                "method": allocated.allocation_method,
                "value": allocated.allocation_value,
                "allocation": [list(t.ordered_members) for t in allocated.allocation or ()],
            })
            return self.activities[activity_id]

    def _advance(self, activity_id: str, to: ActivityStatus, event_type: str) -> Activity:
        with self._lock:
            act = self._get(activity_id)
            pipeline.advance(act, to)  # raises InvalidState on out-of-order moves
            self._append(event_type, {"activity_id": activity_id})
            return self.activities[activity_id]

    def publish_activity(self, activity_id: str) -> Activity:
        return self._advance(activity_id, ActivityStatus.Published, EVENT_PUBLISHED)

    def open_feedback(self, activity_id: str) -> Activity:
        return self._advance(activity_id, ActivityStatus.FeedbackOpen, EVENT_FEEDBACK_OPENED)

    def close_activity(self, activity_id: str) -> Activity:
        return self._advance(activity_id, ActivityStatus.Closed, EVENT_CLOSED)

    def ingest_evaluation(self, activity_id: str, evaluator: StudentId,
                          evaluatee: StudentId, role_label: str,
                          timestamp: int | None = None,
                          survey: Any = None) -> EvaluationRecord:
        with self._lock:
            act = self._get(activity_id)
            rec = EvaluationRecord(
                activity_id=activity_id,
                evaluator=evaluator,
                evaluatee=evaluatee,
                role=role_from_label(role_label),
                timestamp=int(time.time()) if timestamp is None else timestamp,
            )
            pipeline.ingest_feedback(act, [rec], self.history)  # validate only
            payload = _record_to_dict(rec, survey)
            self._append(EVENT_EVALUATION_INGESTED, payload)
            return rec

    # -- persistence ---------------------------------------------------------

    def state_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "roster": [{"student_id": sid, "display_name": self.display_names.get(sid, "")}
                       for sid in self.roster],
            "activities": {aid: _activity_to_dict(act) for aid, act in self.activities.items()},
            "evaluations": [_record_to_dict(rec, self.surveys.get(rec.key))
                            for rec in self.history.records],
            "event_log": [{"seq": e.seq, "type": e.type, "payload": e.payload}
                          for e in self.events],
        }

    def save_state(self, path: str) -> None:
        """Write the canonical state file atomically (same state, same bytes)."""
        blob = json.dumps(self.state_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(blob)
        os.replace(tmp, path)

    @classmethod
    def load_state(cls, path: str, cfg: AllocationConfig | None = None) -> "TeamStore":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"state file declares schema_version {version!r}, "
                                        f"this build reads {SCHEMA_VERSION!r}")
        store = cls(cfg)
        ids = [s["student_id"] for s in data["roster"]]
        store.roster = make_roster(ids) if ids else ()
        store.display_names = {s["student_id"]: s.get("display_name", "") for s in data["roster"]}
        store.activities = {aid: _activity_from_dict(d) for aid, d in data["activities"].items()}
        records = []
        for entry in data["evaluations"]:
            rec = _record_from_dict(entry)
            records.append(rec)
            if "survey" in entry:
                store.surveys[rec.key] = entry["survey"]
        store.history = EvaluationHistory.from_records(records)
        store.events = [Event(seq=e["seq"], type=e["type"], payload=e["payload"])
                        for e in data["event_log"]]
        store._created_count = sum(1 for e in store.events if e.type == EVENT_ACTIVITY_CREATED)
        return store


# -- CSV ingestion -------------------------------------------------------------

ROSTER_HEADER = ["student_id", "display_name"]
EVALUATIONS_HEADER = ["activity_id", "evaluator", "evaluatee", "role", "timestamp"]


def _read_rows(path: str, header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != header:
        raise ParseError(f"expected header {','.join(header)!r}", line=1)
    return [(i, row) for i, row in enumerate(rows[1:], start=2) if row]


def read_roster_csv(path: str) -> tuple[Roster, dict[StudentId, str]]:
    ids: list[str] = []
    names: dict[str, str] = {}
    for line, row in _read_rows(path, ROSTER_HEADER):
        if len(row) != len(ROSTER_HEADER):
            raise ParseError(f"expected {len(ROSTER_HEADER)} columns, got {len(row)}", line=line)
        sid = row[0].strip()
        if not sid:
            raise ParseError("empty student_id", line=line)
        if sid in names:
            raise DuplicateStudent(f"student {sid!r} repeated", line=line)
        ids.append(sid)
        names[sid] = row[1].strip()
    return tuple(ids), names


def import_roster_csv(path: str) -> Roster:
    """Roster in file order from a `student_id,display_name` CSV."""
    roster, _ = read_roster_csv(path)
    return roster


def import_evaluations_csv(path: str) -> list[EvaluationRecord]:
    """Peer votes from an `activity_id,evaluator,evaluatee,role,timestamp` CSV."""
    records = []
    for line, row in _read_rows(path, EVALUATIONS_HEADER):
        if len(row) != len(EVALUATIONS_HEADER):
            raise ParseError(f"expected {len(EVALUATIONS_HEADER)} columns, got {len(row)}", line=line)
        try:
            role = role_from_label(row[3])
        except UnknownRole as exc:
            raise UnknownRole(f"line {line}: {exc}") from None
        try:
            timestamp = int(row[4])
        except ValueError:
            raise ParseError(f"bad timestamp {row[4]!r}", line=line) from None
        records.append(EvaluationRecord(
            activity_id=row[0].strip(),
            evaluator=row[1].strip(),
            evaluatee=row[2].strip(),
            role=role,
            timestamp=timestamp,
        ))
    return records
