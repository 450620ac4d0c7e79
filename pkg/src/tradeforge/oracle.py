"""Slow reference implementations used only by tests and acceptance runs.

Nothing here shares logic with scoring or engine: lineups come from explicit
enumeration over slot assignments and trade costs are recomputed from first
principles.  That independence is what makes agreement between the fast
paths and these oracles meaningful.  Exponential runtime within the guards
is accepted.
"""
from __future__ import annotations

import itertools
import math
from typing import Optional

from .domain import (
    EngineConfig,
    FreeAgentCeilings,
    LeagueSnapshot,
    Position,
    Roster,
    Trade,
    TradeEvaluation,
    ValidationError,
)
from .engine import Individual

_SLOTS = ("QB", "RB", "RB", "WR", "WR", "TE", "FLEX", "K", "DST")
_FLEX_POSITIONS = ("RB", "WR", "TE")
_MAX_ROSTER = 18


def brute_force_lineup(
    roster: Roster, week: int, ceilings: FreeAgentCeilings
) -> float:
    """Best lineup score by trying every assignment of players and
    free-agent placeholders to the nine slots.

    Plain backtracking over all assignments; the only concessions to speed
    are precomputed per-slot candidate lists and an in-place used-marker
    array, neither of which skips any assignment.
    """
    if len(roster.players) > _MAX_ROSTER:
        raise ValidationError(
            f"roster size {len(roster.players)} exceeds enumeration guard "
            f"{_MAX_ROSTER}"
        )
    points = [p.points(week) for p in roster.players]
    positions = [p.position.value for p in roster.players]

    def placeholder(slot: str) -> float:
        if slot == "FLEX":
            return max(ceilings.get(Position(p), week) for p in _FLEX_POSITIONS)
        return ceilings.get(Position(slot), week)

    def slot_candidates(slot: str) -> list[int]:
        if slot == "FLEX":
            return [i for i, pos in enumerate(positions) if pos in _FLEX_POSITIONS]
        return [i for i, pos in enumerate(positions) if pos == slot]

    placeholders = [placeholder(slot) for slot in _SLOTS]
    candidates = [slot_candidates(slot) for slot in _SLOTS]
    used = [False] * len(points)
    best: Optional[float] = None

    def fill(slot_index: int, total: float) -> None:
        nonlocal best
        if slot_index == len(_SLOTS):
            if best is None or total > best:
                best = total
            return
        fill(slot_index + 1, total + placeholders[slot_index])
        for i in candidates[slot_index]:
            if used[i]:
                continue
            used[i] = True
            fill(slot_index + 1, total + points[i])
            used[i] = False

    fill(0, 0.0)
    assert best is not None
    return best


def _candidate_count(snapshot: LeagueSnapshot, limit: int) -> int:
    user_size = len(snapshot.user_team.players)
    user_side = sum(
        math.comb(user_size, k) for k in range(1, min(limit, user_size) + 1)
    )
    total = 0
    for opponent in snapshot.opponents:
        their_size = len(opponent.players)
        total += user_side * sum(
            math.comb(their_size, k) for k in range(1, min(limit, their_size) + 1)
        )
    return total


def brute_force_best_trade(
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    cap: int = 10_000_000,
) -> Optional[Individual]:
    """Global optimum over every candidate trade, or None if no trade has
    strictly positive gains for both sides.

    Ties break toward fewer total players, then the lexicographically
    smaller canonical identity.
    """
    m = config.max_players_per_side
    count = _candidate_count(snapshot, m)
    if count > cap:
        raise ValidationError(f"candidate count {count} exceeds cap {cap}")

    weeks = list(range(snapshot.current_week, snapshot.final_week + 1))
    playoff_weeks = [w for w in weeks if w in snapshot.playoff_weeks]
    regular_count = len(weeks) - len(playoff_weeks)
    if regular_count == 0:
        week_weight = {w: 1.0 for w in weeks}
    else:
        downweight = (
            len(playoff_weeks) + regular_count
            - config.playoff_weight * len(playoff_weeks)
        ) / regular_count
        week_weight = {
            w: config.playoff_weight if w in snapshot.playoff_weeks else downweight
            for w in weeks
        }

    def weekly_scores(roster: Roster) -> dict[int, float]:
        return {
            w: brute_force_lineup(roster, w, snapshot.ceilings) for w in weeks
        }

    user = snapshot.user_team
    base_user = weekly_scores(user)

    best_key: Optional[tuple] = None
    best: Optional[Individual] = None
    for opponent in snapshot.opponents:
        base_opp = weekly_scores(opponent)
        user_ids = sorted(user.player_ids())
        their_ids = sorted(opponent.player_ids())
        for giving_size in range(1, min(m, len(user_ids)) + 1):
            for giving in itertools.combinations(user_ids, giving_size):
                for receiving_size in range(1, min(m, len(their_ids)) + 1):
                    for receiving in itertools.combinations(
                        their_ids, receiving_size
                    ):
                        outgoing = set(giving)
                        incoming = set(receiving)
                        user_after = Roster(
                            user.team_id,
                            user.team_name,
                            tuple(
                                p for p in user.players
                                if p.player_id not in outgoing
                            )
                            + tuple(
                                p for p in opponent.players
                                if p.player_id in incoming
                            ),
                        )
                        opp_after = Roster(
                            opponent.team_id,
                            opponent.team_name,
                            tuple(
                                p for p in opponent.players
                                if p.player_id not in incoming
                            )
                            + tuple(
                                p for p in user.players
                                if p.player_id in outgoing
                            ),
                        )
                        after_user = weekly_scores(user_after)
                        after_opp = weekly_scores(opp_after)
                        weekly_a = {w: after_user[w] - base_user[w] for w in weeks}
                        weekly_b = {w: after_opp[w] - base_opp[w] for w in weeks}
                        gain_a = 0.0
                        gain_b = 0.0
                        weighted_a = 0.0
                        for w in weeks:
                            gain_a += weekly_a[w]
                            gain_b += weekly_b[w]
                            weighted_a += week_weight[w] * weekly_a[w]
                        if not (gain_a > 0.0 and gain_b > 0.0):
                            continue
                        cost = -(
                            config.alpha * weighted_a
                            + config.beta * gain_b
                            - config.gamma * abs(weighted_a - gain_b)
                        )
                        trade = Trade(opponent.team_id, giving, receiving)
                        key = (cost, trade.total_players, trade.identity())
                        if best_key is None or key < best_key:
                            best_key = key
                            best = Individual(
                                trade,
                                TradeEvaluation(
                                    weekly_gain_a=weekly_a,
                                    weekly_gain_b=weekly_b,
                                    gain_a=gain_a,
                                    gain_b=gain_b,
                                    weighted_gain_a=weighted_a,
                                    cost=cost,
                                    feasible=True,
                                ),
                            )
    return best
