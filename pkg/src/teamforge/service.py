"""HTTP facade over the pipeline: activities, feedback, posteriors, roster.

Versioned under /api/v1. Every state-mutating endpoint appends exactly one
event to the store's log; GETs are pure projections of stored state. Error
payloads are ``{"code", "message"}`` with a fixed code-to-status mapping:
infeasible 422, invalid_state 409, not_found 404, everything else 400.

No authentication in v1: caller identity travels in request bodies.
"""

from __future__ import annotations

import os
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .bayes import map_role, posterior, posteriors_for_roster
from .errors import (
    Infeasible,
    InvalidState,
    NotFound,
    NotTeammates,
    SelfEvaluation,
    UnknownRole,
)
from .pipeline import Activity, AllocationConfig
from .roles import ROLES, Team
from .solver import SolveBudget
from .storage import TeamStore
from .value import expected_team_value

ERROR_STATUS = {
    "infeasible": 422,
    "invalid_state": 409,
    "not_found": 404,
    "not_teammates": 400,
    "self_evaluation": 400,
    "unknown_role": 400,
    "bad_request": 400,
}

_ERROR_CODES = {
    Infeasible: "infeasible",
    InvalidState: "invalid_state",
    NotFound: "not_found",
    NotTeammates: "not_teammates",
    SelfEvaluation: "self_evaluation",
    UnknownRole: "unknown_role",
}


class ActivityCreateBody(BaseModel):
    module_id: str
    description: str
    start_date: str
    end_date: str
    size_min: int
    size_max: int


class AllocateBody(BaseModel):
    seed: int | None = None


class EvaluationBody(BaseModel):
    evaluator: str
    evaluatee: str
    role: str
    timestamp: int | None = None
    survey: Any = None


class RosterEntry(BaseModel):
    student_id: str
    display_name: str = ""


class RosterBody(BaseModel):
    students: list[RosterEntry]


def create_app(store: TeamStore | None = None, state_path: str | None = None,
               default_seed: int = 0) -> FastAPI:
    """Build the service around a store, optionally persisted at state_path."""
    if store is None:
        if state_path and os.path.exists(state_path):
            store = TeamStore.load_state(state_path)
        else:
            store = TeamStore()

    app = FastAPI(title="teamforge", docs_url=None, redoc_url=None)
    app.state.store = store
    # the companion browser UI may be served from another origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    def error_response(code: str, message: str) -> JSONResponse:
        return JSONResponse(status_code=ERROR_STATUS[code],
                            content={"code": code, "message": message})

    for exc_type, code in _ERROR_CODES.items():
        def handler(request: Request, exc: Exception, code: str = code) -> JSONResponse:
            return error_response(code, str(exc))
        app.add_exception_handler(exc_type, handler)

    @app.exception_handler(RequestValidationError)
    async def bad_body(request: Request, exc: RequestValidationError) -> JSONResponse:
        return error_response("bad_request", str(exc.errors()))

    @app.exception_handler(ValueError)
    async def bad_value(request: Request, exc: ValueError) -> JSONResponse:
        return error_response("bad_request", str(exc))

    def persist() -> None:
        if state_path:
            store.save_state(state_path)

    def activity_view(act: Activity) -> dict[str, Any]:
        teams = None
        if act.allocation is not None:
            posteriors = posteriors_for_roster(store.history, store.roster, store.cfg.smoothing)
            teams = [_team_view(team, posteriors, store.display_names)
                     for team in act.allocation]
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
            "method": act.allocation_method,
            "value": act.allocation_value,
            "teams": teams,
        }

    # -- activities ----------------------------------------------------------

    @app.post("/api/v1/activities", status_code=201)
    def create_activity(body: ActivityCreateBody) -> dict[str, Any]:
        act = store.create_activity(
            module_id=body.module_id,
            description=body.description,
            start_date=body.start_date,
            end_date=body.end_date,
            size_min=body.size_min,
            size_max=body.size_max,
            seed=default_seed,
        )
        persist()
        return activity_view(act)

    @app.get("/api/v1/activities")
    def list_activities() -> dict[str, Any]:
        return {"activities": [activity_view(store.activities[aid])
                               for aid in sorted(store.activities)]}

    @app.get("/api/v1/activities/{activity_id}")
    def get_activity(activity_id: str) -> dict[str, Any]:
        return activity_view(store._get(activity_id))

    @app.post("/api/v1/activities/{activity_id}/allocate")
    def allocate(activity_id: str, body: AllocateBody | None = None) -> dict[str, Any]:
        seed = body.seed if body is not None else None
        act = store.allocate_activity(activity_id, seed=seed)
        persist()
        return activity_view(act)

    @app.post("/api/v1/activities/{activity_id}/publish")
    def publish(activity_id: str) -> dict[str, Any]:
        act = store.publish_activity(activity_id)
        persist()
        return activity_view(act)

    @app.post("/api/v1/activities/{activity_id}/open-feedback")
    def open_feedback(activity_id: str) -> dict[str, Any]:
        act = store.open_feedback(activity_id)
        persist()
        return activity_view(act)

    @app.post("/api/v1/activities/{activity_id}/close")
    def close(activity_id: str) -> dict[str, Any]:
        act = store.close_activity(activity_id)
        persist()
        return activity_view(act)

    @app.post("/api/v1/activities/{activity_id}/evaluations", status_code=204)
    def submit_evaluation(activity_id: str, body: EvaluationBody) -> Response:
        store.ingest_evaluation(
            activity_id=activity_id,
            evaluator=body.evaluator,
            evaluatee=body.evaluatee,
            role_label=body.role,
            timestamp=body.timestamp,
            survey=body.survey,
        )
        persist()
        return Response(status_code=204)

    # -- students and roster ---------------------------------------------------

    @app.get("/api/v1/students/{student_id}/posterior")
    def student_posterior(student_id: str) -> dict[str, Any]:
        if student_id not in store.roster:
            raise NotFound(f"no such student: {student_id!r}")
        probs = posterior(store.history, student_id, store.cfg.smoothing)
        return {
            "student_id": student_id,
            "display_name": store.display_names.get(student_id, ""),
            "posterior": {role.label: float(probs[role]) for role in ROLES},
            "map_role": map_role(probs).label,
        }

    @app.get("/api/v1/roster")
    def get_roster() -> dict[str, Any]:
        return {"students": [{"student_id": sid,
                              "display_name": store.display_names.get(sid, "")}
                             for sid in store.roster]}

    @app.put("/api/v1/roster")
    def put_roster(body: RosterBody) -> dict[str, Any]:
        store.set_roster([(s.student_id, s.display_name) for s in body.students])
        persist()
        return {"students": [{"student_id": sid,
                              "display_name": store.display_names.get(sid, "")}
                             for sid in store.roster]}

    return app


def _team_view(team: Team, posteriors, names) -> dict[str, Any]:
    members = team.ordered_members
    return {
        "members": [{"student_id": sid, "display_name": names.get(sid, "")}
                    for sid in members],
        "expected_value": expected_team_value([posteriors[sid] for sid in members]),
    }


def app_from_env() -> FastAPI:
    """Service configured from the environment: STATE_PATH, EXACT_CAP,
    HEURISTIC_BUDGET_MS, SEED (PORT is read by the __main__ runner)."""
    budget_ms = os.environ.get("HEURISTIC_BUDGET_MS")
    cfg = AllocationConfig(
        exact_cap=int(os.environ.get("EXACT_CAP", "20")),
        budget=SolveBudget(max_millis=int(budget_ms) if budget_ms else None),
    )
    state_path = os.environ.get("STATE_PATH")
    if state_path and os.path.exists(state_path):
        store = TeamStore.load_state(state_path, cfg)
    else:
        store = TeamStore(cfg)
    return create_app(store=store, state_path=state_path,
                      default_seed=int(os.environ.get("SEED", "0")))


def main() -> None:
    import uvicorn

    uvicorn.run(app_from_env(), host="0.0.0.0", port=int(os.environ.get("PORT", "8080")))


if __name__ == "__main__":
    main()
