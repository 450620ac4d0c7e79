"""Factories shared across test modules.

Projection values produced here are multiples of 0.25 so that float sums are
exact regardless of association order; equality assertions against the
brute-force oracles rely on that.
"""
from __future__ import annotations

import random
from typing import Mapping, Sequence

from tradeforge.domain import (
    FreeAgentCeilings,
    LeagueSnapshot,
    PlayerProjection,
    Position,
    Roster,
)

# A full starting lineup's worth of positions plus some bench depth.
STANDARD_ROSTER_POSITIONS = (
    "QB", "RB", "RB", "WR", "WR", "TE", "K", "DST",
)


def make_player(
    player_id: str,
    position: str | Position,
    weekly_points: Mapping[int, float] | float,
    name: str | None = None,
    weeks: Sequence[int] = range(1, 18),
) -> PlayerProjection:
    if not isinstance(weekly_points, Mapping):
        weekly_points = {w: float(weekly_points) for w in weeks}
    return PlayerProjection(
        player_id=player_id,
        name=name or player_id.replace("_", " ").title(),
        position=Position(position),
        weekly_points=dict(weekly_points),
    )


def make_roster(
    team_id: str,
    players: Sequence[PlayerProjection],
    name: str | None = None,
) -> Roster:
    return Roster(team_id=team_id, team_name=name or team_id, players=tuple(players))


def make_snapshot(
    teams: Sequence[Roster],
    user_team_id: str | None = None,
    current_week: int = 1,
    final_week: int = 17,
    playoff_weeks: Sequence[int] = (15, 16, 17),
    ceilings: FreeAgentCeilings | None = None,
) -> LeagueSnapshot:
    return LeagueSnapshot(
        user_team_id=user_team_id or teams[0].team_id,
        teams=tuple(teams),
        current_week=current_week,
        final_week=final_week,
        playoff_weeks=frozenset(playoff_weeks),
        ceilings=ceilings or FreeAgentCeilings(),
    )


def quarter_points(rng: random.Random, low: float = 0.0, high: float = 30.0) -> float:
    """Uniform multiple of 0.25 in [low, high]."""
    steps = int(round((high - low) / 0.25))
    return low + 0.25 * rng.randint(0, steps)


def random_player(
    rng: random.Random,
    player_id: str,
    position: str | Position,
    weeks: Sequence[int] = range(1, 18),
    high: float = 30.0,
) -> PlayerProjection:
    weekly = {w: quarter_points(rng, 0.0, high) for w in weeks}
    return make_player(player_id, position, weekly)


def random_roster(
    rng: random.Random,
    team_id: str,
    positions: Sequence[str] = STANDARD_ROSTER_POSITIONS,
    weeks: Sequence[int] = range(1, 18),
) -> Roster:
    players = [
        random_player(rng, f"{team_id}_p{i}", pos, weeks=weeks)
        for i, pos in enumerate(positions)
    ]
    return make_roster(team_id, players)


def surplus_pair_league() -> LeagueSnapshot:
    """RB-heavy team versus WR-heavy team, both with bench surplus.

    Teams whose rosters exactly fill the lineup make every trade zero-sum, so
    mutually positive trades only exist when both sides carry surplus depth.
    Two weeks (13..14, playoff week 14) keep engine runs fast.
    """
    a = make_roster("a", [
        make_player("a_qb", "QB", 20.0, weeks=range(13, 15)),
        make_player("a_rb1", "RB", 12.0, weeks=range(13, 15)),
        make_player("a_rb2", "RB", 10.0, weeks=range(13, 15)),
        make_player("a_rb3", "RB", 8.0, weeks=range(13, 15)),
        make_player("a_scrub", "RB", 1.0, weeks=range(13, 15)),
        make_player("a_wr", "WR", 9.0, weeks=range(13, 15)),
        make_player("a_te", "TE", 7.0, weeks=range(13, 15)),
        make_player("a_k", "K", 5.0, weeks=range(13, 15)),
        make_player("a_dst", "DST", 4.0, weeks=range(13, 15)),
    ])
    b = make_roster("b", [
        make_player("b_qb", "QB", 18.0, weeks=range(13, 15)),
        make_player("b_rb", "RB", 5.0, weeks=range(13, 15)),
        make_player("b_wr1", "WR", 13.0, weeks=range(13, 15)),
        make_player("b_wr2", "WR", 12.0, weeks=range(13, 15)),
        make_player("b_wr3", "WR", 11.0, weeks=range(13, 15)),
        make_player("b_wr4", "WR", 10.0, weeks=range(13, 15)),
        make_player("b_te", "TE", 8.0, weeks=range(13, 15)),
        make_player("b_k", "K", 6.0, weeks=range(13, 15)),
        make_player("b_dst", "DST", 3.0, weeks=range(13, 15)),
    ])
    ceilings = FreeAgentCeilings({
        (pos, week): 3.0
        for pos in (Position.RB, Position.WR, Position.TE)
        for week in (13, 14)
    })
    return make_snapshot(
        [a, b], current_week=13, final_week=14, playoff_weeks=(14,),
        ceilings=ceilings,
    )


def random_league(
    rng: random.Random,
    n_teams: int = 3,
    positions: Sequence[str] = STANDARD_ROSTER_POSITIONS,
    current_week: int = 13,
    final_week: int = 17,
    playoff_weeks: Sequence[int] = (15, 16, 17),
    with_ceilings: bool = True,
) -> LeagueSnapshot:
    teams = [
        random_roster(rng, f"team{t}", positions, weeks=range(1, final_week + 1))
        for t in range(n_teams)
    ]
    ceilings = None
    if with_ceilings:
        values = {
            (Position(pos), w): quarter_points(rng, 0.0, 8.0)
            for pos in ("QB", "RB", "WR", "TE", "K", "DST")
            for w in range(current_week, final_week + 1)
        }
        ceilings = FreeAgentCeilings(values)
    return make_snapshot(
        teams,
        current_week=current_week,
        final_week=final_week,
        playoff_weeks=playoff_weeks,
        ceilings=ceilings,
    )
