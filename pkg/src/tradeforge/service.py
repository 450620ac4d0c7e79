"""HTTP facade over the engine.

Snapshots are uploaded once and referenced by id; optimization runs execute
on a small background pool and are observed by polling.  Everything lives
in process memory: this is a decision-support tool, not a system of record.
"""
from __future__ import annotations

import dataclasses
import itertools
import json
import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .domain import (
    EngineConfig,
    LeagueSnapshot,
    Trade,
    TradeEvaluation,
    ValidationError,
    build_config,
)
from .engine import RunCancelled, RunResult, run
from .ingest import SnapshotFormatError, load_snapshot
from .scoring import evaluate_trade

MAX_SNAPSHOT_BYTES = 10 * 1024 * 1024
DEFAULT_WORKERS = 2


@dataclasses.dataclass
class _RunRecord:
    """Mutable lifecycle state for one background run; guarded by the store lock."""
    run_id: str
    snapshot_id: str
    config: EngineConfig
    state: str = "queued"            # queued -> running -> done | failed
    done_generations: int = 0
    best_cost: Optional[float] = None
    reason: Optional[str] = None
    result: Optional[RunResult] = None
    cancel_requested: bool = False


class ServiceStore:
    """In-memory snapshots and runs plus the worker pool that drives them."""

    def __init__(self, workers: int = DEFAULT_WORKERS) -> None:
        self.lock = threading.Lock()
        self.snapshots: dict[str, LeagueSnapshot] = {}
        self.runs: dict[str, _RunRecord] = {}
        # FIFO by submission order; at most `workers` runs execute at once.
        self.executor = ThreadPoolExecutor(max_workers=workers)
        self._ids = itertools.count(1)

    def fresh_id(self, prefix: str) -> str:
        return f"{prefix}-{next(self._ids)}"

    def shutdown(self) -> None:
        with self.lock:
            for record in self.runs.values():
                record.cancel_requested = True
        self.executor.shutdown(wait=False, cancel_futures=True)


def _execute_run(store: ServiceStore, record: _RunRecord) -> None:
    with store.lock:
        if record.cancel_requested:
            record.state = "failed"
            record.reason = "cancelled"
            return
        record.state = "running"
        snapshot = store.snapshots[record.snapshot_id]

    def progress(done: int, total: int, best: Optional[float]) -> None:
        with store.lock:
            record.done_generations = done
            record.best_cost = best

    def should_cancel() -> bool:
        with store.lock:
            return record.cancel_requested

    try:
        result = run(
            snapshot,
            record.config,
            progress_cb=progress,
            should_cancel=should_cancel,
        )
    except RunCancelled:
        with store.lock:
            record.state = "failed"
            record.reason = "cancelled"
        return
    except Exception as exc:  # surface the failure to pollers, don't die silently
        with store.lock:
            record.state = "failed"
            record.reason = str(exc)
        return
    with store.lock:
        record.result = result
        record.done_generations = record.config.generations
        best = result.final_population.best
        record.best_cost = best.evaluation.cost if best else record.best_cost
        record.state = "done"


# -----------------------------
# Serialization
# -----------------------------

def _error(status: int, code: str, message: str,
           path: Optional[str] = None) -> JSONResponse:
    body: dict[str, Any] = {"code": code, "message": message}
    if path is not None:
        body["path"] = path
    return JSONResponse(status_code=status, content=body)


def _league_summary(snapshot_id: str, snapshot: LeagueSnapshot) -> dict[str, Any]:
    return {
        "snapshot_id": snapshot_id,
        "user_team_id": snapshot.user_team_id,
        "current_week": snapshot.current_week,
        "final_week": snapshot.final_week,
        "playoff_weeks": sorted(snapshot.playoff_weeks),
        "teams": [
            {
                "team_id": team.team_id,
                "team_name": team.team_name,
                "roster_size": len(team.players),
            }
            for team in snapshot.teams
        ],
    }


def _evaluation_body(evaluation: TradeEvaluation) -> dict[str, Any]:
    return {
        "weekly_gain_a": {
            str(week): evaluation.weekly_gain_a[week]
            for week in sorted(evaluation.weekly_gain_a)
        },
        "weekly_gain_b": {
            str(week): evaluation.weekly_gain_b[week]
            for week in sorted(evaluation.weekly_gain_b)
        },
        "gain_a": evaluation.gain_a,
        "gain_b": evaluation.gain_b,
        "weighted_gain_a": evaluation.weighted_gain_a,
        "cost": evaluation.cost,
        "feasible": evaluation.feasible,
    }


def _player_ref(roster, player_id: str) -> dict[str, str]:
    player = roster.find(player_id)
    return {"player_id": player_id, "name": player.name}


def _trade_rows(result: RunResult, snapshot: LeagueSnapshot) -> list[dict[str, Any]]:
    ordered = sorted(
        result.final_population.individuals,
        key=lambda ind: (ind.evaluation.cost, ind.trade.identity()),
    )
    rows = []
    for individual in ordered:
        trade = individual.trade
        opponent = snapshot.team(trade.opponent_team_id)
        rows.append({
            "opponent_team_id": opponent.team_id,
            "opponent_team_name": opponent.team_name,
            "giving": [_player_ref(snapshot.user_team, pid) for pid in trade.giving],
            "receiving": [_player_ref(opponent, pid) for pid in trade.receiving],
            "evaluation": _evaluation_body(individual.evaluation),
        })
    return rows


def _handle_body(store: ServiceStore, record: _RunRecord) -> dict[str, Any]:
    """Serialize a run handle; caller must hold the store lock."""
    body: dict[str, Any] = {
        "run_id": record.run_id,
        "snapshot_id": record.snapshot_id,
        "state": record.state,
        "progress": {
            "done": record.done_generations,
            "total": record.config.generations,
        },
    }
    if record.best_cost is not None:
        body["best_cost_so_far"] = record.best_cost
    if record.reason is not None:
        body["reason"] = record.reason
    if record.state == "done" and record.result is not None:
        snapshot = store.snapshots[record.snapshot_id]
        body["trades"] = _trade_rows(record.result, snapshot)
        body["evaluations"] = record.result.evaluations
    return body


# -----------------------------
# Request parsing
# -----------------------------

def _parse_config(raw: Any) -> EngineConfig:
    if raw is None:
        return build_config()
    if not isinstance(raw, dict):
        raise ValidationError("config must be an object")
    overrides = dict(raw)
    preset = overrides.pop("preset", "default")
    if not isinstance(preset, str):
        raise ValidationError("config.preset must be a string")
    if "mutation_probs" in overrides:
        probs = overrides["mutation_probs"]
        if not isinstance(probs, list):
            raise ValidationError("config.mutation_probs must be a list")
        overrides["mutation_probs"] = tuple(probs)
    return build_config(preset, overrides)


def _parse_trade(raw: Any) -> Trade:
    if not isinstance(raw, dict):
        raise ValidationError("trade must be an object")
    missing = {"opponent_team_id", "giving", "receiving"} - raw.keys()
    if missing:
        raise ValidationError(f"trade is missing {sorted(missing)}")
    giving = raw["giving"]
    receiving = raw["receiving"]
    if not isinstance(giving, list) or not isinstance(receiving, list):
        raise ValidationError("trade.giving and trade.receiving must be lists")
    return Trade(
        opponent_team_id=raw["opponent_team_id"],
        giving=tuple(giving),
        receiving=tuple(receiving),
    )


# -----------------------------
# Application
# -----------------------------

def create_app(workers: int = DEFAULT_WORKERS) -> FastAPI:
    store = ServiceStore(workers)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        store.shutdown()

    app = FastAPI(title="tradeforge", version=__version__, lifespan=lifespan)
    app.state.store = store

    @app.post("/snapshots")
    async def upload_snapshot(request: Request):
        body = await request.body()
        if len(body) > MAX_SNAPSHOT_BYTES:
            return _error(413, "too_large",
                          f"snapshot exceeds {MAX_SNAPSHOT_BYTES} bytes")
        try:
            snapshot = load_snapshot(body)
        except SnapshotFormatError as exc:
            return _error(400, "invalid_snapshot", str(exc), path=exc.path)
        with store.lock:
            snapshot_id = store.fresh_id("snap")
            store.snapshots[snapshot_id] = snapshot
        return _league_summary(snapshot_id, snapshot)

    @app.get("/snapshots/{snapshot_id}/league")
    async def get_league(snapshot_id: str):
        with store.lock:
            snapshot = store.snapshots.get(snapshot_id)
        if snapshot is None:
            return _error(404, "not_found", f"unknown snapshot {snapshot_id!r}")
        return _league_summary(snapshot_id, snapshot)

    @app.post("/runs")
    async def start_run(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return _error(400, "bad_request", f"invalid body: {exc}")
        if not isinstance(body, dict) or "snapshot_id" not in body:
            return _error(400, "bad_request", "body needs a snapshot_id")
        snapshot_id = body["snapshot_id"]
        try:
            config = _parse_config(body.get("config"))
        except ValidationError as exc:
            return _error(400, "invalid_config", str(exc))
        with store.lock:
            if snapshot_id not in store.snapshots:
                return _error(404, "not_found",
                              f"unknown snapshot {snapshot_id!r}")
            record = _RunRecord(
                run_id=store.fresh_id("run"),
                snapshot_id=snapshot_id,
                config=config,
            )
            store.runs[record.run_id] = record
            # Serialize before submitting so the response always says queued.
            handle = _handle_body(store, record)
        store.executor.submit(_execute_run, store, record)
        return handle

    @app.get("/runs/{run_id}")
    async def get_run(run_id: str):
        with store.lock:
            record = store.runs.get(run_id)
            if record is None:
                return _error(404, "not_found", f"unknown run {run_id!r}")
            return _handle_body(store, record)

    @app.delete("/runs/{run_id}")
    async def cancel_run(run_id: str):
        with store.lock:
            record = store.runs.get(run_id)
            if record is None:
                return _error(404, "not_found", f"unknown run {run_id!r}")
            record.cancel_requested = True
            if record.state == "queued":
                # Not started yet; fail it here so pollers see it immediately.
                record.state = "failed"
                record.reason = "cancelled"
            return _handle_body(store, record)

    @app.post("/evaluate")
    async def evaluate(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return _error(400, "bad_request", f"invalid body: {exc}")
        if not isinstance(body, dict) or "snapshot_id" not in body:
            return _error(400, "bad_request", "body needs a snapshot_id")
        with store.lock:
            snapshot = store.snapshots.get(body["snapshot_id"])
        if snapshot is None:
            return _error(404, "not_found",
                          f"unknown snapshot {body['snapshot_id']!r}")
        try:
            config = _parse_config(body.get("config"))
        except ValidationError as exc:
            return _error(400, "invalid_config", str(exc))
        try:
            trade = _parse_trade(body.get("trade"))
            evaluation = evaluate_trade(trade, snapshot, config)
        except ValidationError as exc:
            return _error(422, "unresolvable_trade", str(exc))
        return _evaluation_body(evaluation)

    return app
