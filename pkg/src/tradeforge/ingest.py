"""Snapshot documents and result export.

The snapshot format is versioned JSON, validated strictly: unknown keys,
wrong types, and duplicate ids are rejected with a dotted path to the
offending field so fetcher bugs surface immediately.  Live fantasy-platform
fetching is out of scope; anything able to produce this document works.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from .domain import (
    FreeAgentCeilings,
    LeagueSnapshot,
    PlayerProjection,
    Position,
    Roster,
    ValidationError,
)
from .engine import RunResult

SCHEMA_VERSION = 1

CSV_HEADER = (
    "Cost,Team A Pt Gain,Team B Pt Gain,"
    "Team A Players to Trade,Team B Players to Trade"
)


class SnapshotFormatError(ValidationError):
    """Schema violation; ``path`` points at the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# -----------------------------
# Parsing helpers
# -----------------------------

def _expect_mapping(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SnapshotFormatError(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SnapshotFormatError(path, f"expected a list, got {type(value).__name__}")
    return value


def _expect_str(value: Any, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise SnapshotFormatError(path, "expected a non-empty string")
    return value


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SnapshotFormatError(path, f"expected an integer, got {value!r}")
    return value


def _expect_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SnapshotFormatError(path, f"expected a number, got {value!r}")
    return float(value)


def _check_keys(mapping: Mapping, required: set, optional: set, path: str) -> None:
    unknown = set(mapping) - required - optional
    if unknown:
        key = sorted(unknown)[0]
        raise SnapshotFormatError(f"{path}.{key}", "unknown field")
    missing = required - set(mapping)
    if missing:
        key = sorted(missing)[0]
        raise SnapshotFormatError(f"{path}.{key}", "missing required field")


def _week_key(key: Any, path: str) -> int:
    if not isinstance(key, str) or not key.isdigit():
        raise SnapshotFormatError(path, f"week keys must be integer strings, got {key!r}")
    return int(key)


def _parse_player(raw: Any, path: str) -> PlayerProjection:
    obj = _expect_mapping(raw, path)
    _check_keys(
        obj, {"player_id", "name", "position", "weekly_points"}, set(), path
    )
    position_value = _expect_str(obj["position"], f"{path}.position")
    try:
        position = Position(position_value)
    except ValueError:
        raise SnapshotFormatError(
            f"{path}.position", f"unknown position {position_value!r}"
        ) from None
    weekly_raw = _expect_mapping(obj["weekly_points"], f"{path}.weekly_points")
    weekly = {}
    for key, value in weekly_raw.items():
        week = _week_key(key, f"{path}.weekly_points.{key}")
        weekly[week] = _expect_number(value, f"{path}.weekly_points.{key}")
    try:
        return PlayerProjection(
            player_id=_expect_str(obj["player_id"], f"{path}.player_id"),
            name=_expect_str(obj["name"], f"{path}.name"),
            position=position,
            weekly_points=weekly,
        )
    except ValidationError as exc:
        raise SnapshotFormatError(path, str(exc)) from None


def _parse_ceilings(raw: Any, path: str) -> FreeAgentCeilings:
    obj = _expect_mapping(raw, path)
    values: dict[tuple[Position, int], float] = {}
    for pos_key, weeks_raw in obj.items():
        try:
            position = Position(pos_key)
        except ValueError:
            raise SnapshotFormatError(
                f"{path}.{pos_key}", f"unknown position {pos_key!r}"
            ) from None
        weeks = _expect_mapping(weeks_raw, f"{path}.{pos_key}")
        for key, value in weeks.items():
            week = _week_key(key, f"{path}.{pos_key}.{key}")
            values[(position, week)] = _expect_number(
                value, f"{path}.{pos_key}.{key}"
            )
    try:
        return FreeAgentCeilings(values)
    except ValidationError as exc:
        raise SnapshotFormatError(path, str(exc)) from None


def load_snapshot(document: str | bytes) -> LeagueSnapshot:
    """Parse and fully validate a version-1 snapshot document."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        root_raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SnapshotFormatError("$", f"invalid JSON: {exc}") from None
    root = _expect_mapping(root_raw, "$")
    _check_keys(root, {"version", "league"}, {"free_agents"}, "$")
    version = _expect_int(root["version"], "$.version")
    if version != SCHEMA_VERSION:
        raise SnapshotFormatError(
            "$.version", f"unsupported version {version}; expected {SCHEMA_VERSION}"
        )

    league = _expect_mapping(root["league"], "league")
    _check_keys(
        league,
        {"user_team_id", "current_week", "teams"},
        {"final_week", "playoff_weeks", "ceilings"},
        "league",
    )

    teams = []
    seen_players: dict[str, str] = {}
    for t_index, team_raw in enumerate(_expect_list(league["teams"], "league.teams")):
        t_path = f"league.teams[{t_index}]"
        team = _expect_mapping(team_raw, t_path)
        _check_keys(team, {"team_id", "team_name", "players"}, set(), t_path)
        players = []
        for p_index, player_raw in enumerate(
            _expect_list(team["players"], f"{t_path}.players")
        ):
            p_path = f"{t_path}.players[{p_index}]"
            player = _parse_player(player_raw, p_path)
            if player.player_id in seen_players:
                raise SnapshotFormatError(
                    f"{p_path}.player_id",
                    f"duplicate player_id {player.player_id!r} "
                    f"(also in {seen_players[player.player_id]})",
                )
            seen_players[player.player_id] = t_path
            players.append(player)
        try:
            teams.append(Roster(
                team_id=_expect_str(team["team_id"], f"{t_path}.team_id"),
                team_name=_expect_str(team["team_name"], f"{t_path}.team_name"),
                players=tuple(players),
            ))
        except ValidationError as exc:
            raise SnapshotFormatError(t_path, str(exc)) from None

    has_free_agents = "free_agents" in root
    has_ceilings = "ceilings" in league
    if has_free_agents and has_ceilings:
        raise SnapshotFormatError(
            "$.free_agents",
            "supply either free_agents or league.ceilings, not both",
        )
    if not has_free_agents and not has_ceilings:
        raise SnapshotFormatError(
            "league.ceilings",
            "one ceiling source is required: free_agents or league.ceilings",
        )
    if has_free_agents:
        free_agents = []
        for f_index, fa_raw in enumerate(
            _expect_list(root["free_agents"], "$.free_agents")
        ):
            f_path = f"$.free_agents[{f_index}]"
            fa = _parse_player(fa_raw, f_path)
            if fa.player_id in seen_players:
                raise SnapshotFormatError(
                    f"{f_path}.player_id",
                    f"duplicate player_id {fa.player_id!r} "
                    f"(also in {seen_players[fa.player_id]})",
                )
            seen_players[fa.player_id] = "$.free_agents"
            free_agents.append(fa)
        ceilings = FreeAgentCeilings.from_free_agents(free_agents)
    else:
        ceilings = _parse_ceilings(league["ceilings"], "league.ceilings")

    playoff_raw = league.get("playoff_weeks")
    if playoff_raw is None:
        playoff_weeks = LeagueSnapshot.__dataclass_fields__["playoff_weeks"].default
    else:
        playoff_weeks = frozenset(
            _expect_int(w, f"league.playoff_weeks[{i}]")
            for i, w in enumerate(_expect_list(playoff_raw, "league.playoff_weeks"))
        )

    final_week_raw = league.get("final_week")
    try:
        return LeagueSnapshot(
            user_team_id=_expect_str(league["user_team_id"], "league.user_team_id"),
            teams=tuple(teams),
            current_week=_expect_int(league["current_week"], "league.current_week"),
            final_week=(
                _expect_int(final_week_raw, "league.final_week")
                if final_week_raw is not None
                else LeagueSnapshot.__dataclass_fields__["final_week"].default
            ),
            playoff_weeks=playoff_weeks,
            ceilings=ceilings,
        )
    except ValidationError as exc:
        raise SnapshotFormatError("league", str(exc)) from None


def save_snapshot(snapshot: LeagueSnapshot) -> str:
    """Canonical JSON for a snapshot; load_snapshot inverts it exactly.

    Ceilings are always written explicitly, so a snapshot built from free
    agents round-trips through its computed ceilings.
    """
    ceilings: dict[str, dict[str, float]] = {}
    for (position, week), value in sorted(
        snapshot.ceilings.items(), key=lambda item: (item[0][0].value, item[0][1])
    ):
        ceilings.setdefault(position.value, {})[str(week)] = value
    document = {
        "version": SCHEMA_VERSION,
        "league": {
            "user_team_id": snapshot.user_team_id,
            "current_week": snapshot.current_week,
            "final_week": snapshot.final_week,
            "playoff_weeks": sorted(snapshot.playoff_weeks),
            "ceilings": ceilings,
            "teams": [
                {
                    "team_id": team.team_id,
                    "team_name": team.team_name,
                    "players": [
                        {
                            "player_id": player.player_id,
                            "name": player.name,
                            "position": player.position.value,
                            "weekly_points": {
                                str(week): player.weekly_points[week]
                                for week in sorted(player.weekly_points)
                            },
                        }
                        for player in team.players
                    ],
                }
                for team in snapshot.teams
            ],
        },
    }
    return json.dumps(document, indent=2)


# -----------------------------
# Result export
# -----------------------------

@dataclass(frozen=True)
class TradeTableRow:
    """One output row; gains are the unweighted season gains."""
    cost: float
    gain_a: float
    gain_b: float
    giving_names: str
    receiving_names: str


def _player_names(snapshot: LeagueSnapshot) -> dict[str, str]:
    names = {}
    for team in snapshot.teams:
        for player in team.players:
            names[player.player_id] = player.name
    return names


def trade_table_rows(
    result: RunResult, snapshot: LeagueSnapshot
) -> list[TradeTableRow]:
    names = _player_names(snapshot)
    rows = []
    ordered = sorted(
        result.final_population.individuals,
        key=lambda ind: (ind.evaluation.cost, ind.trade.identity()),
    )
    for ind in ordered:
        rows.append(TradeTableRow(
            cost=round(ind.evaluation.cost, 2),
            gain_a=round(ind.evaluation.gain_a, 2),
            gain_b=round(ind.evaluation.gain_b, 2),
            giving_names=", ".join(names[pid] for pid in ind.trade.giving),
            receiving_names=", ".join(names[pid] for pid in ind.trade.receiving),
        ))
    return rows


def export_trades_csv(result: RunResult, snapshot: LeagueSnapshot) -> bytes:
    """Render the final population as CSV (LF newlines, UTF-8 bytes)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in trade_table_rows(result, snapshot):
        writer.writerow([
            f"{row.cost:.2f}",
            f"{row.gain_a:.2f}",
            f"{row.gain_b:.2f}",
            row.giving_names,
            row.receiving_names,
        ])
    return buffer.getvalue().encode("utf-8")
