"""Deterministic evaluation kernel.

Weekly optimal lineups, season totals, playoff weighting, and the trade cost
function.  Pure functions over immutable inputs; TradeEvaluator adds
precomputation and caching on top of the same arithmetic.

Weekly totals are accumulated in one canonical slot order (QB, RB, RB, WR,
WR, TE, FLEX, K, DST) so repeated evaluations are reproducible bit for bit.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .domain import (
    EngineConfig,
    FreeAgentCeilings,
    LeagueSnapshot,
    MAX_FINAL_WEEK,
    MIN_WEEK,
    PlayerProjection,
    Position,
    Roster,
    Trade,
    TradeEvaluation,
    ValidationError,
    resolve_trade,
)

# Slot counts are constants of the artifact; configurable lineup formats are
# out of scope.
DEDICATED_SLOT_COUNTS: dict[Position, int] = {
    Position.QB: 1,
    Position.RB: 2,
    Position.WR: 2,
    Position.TE: 1,
    Position.K: 1,
    Position.DST: 1,
}
FLEX_ELIGIBLE = (Position.RB, Position.WR, Position.TE)
LINEUP_SIZE = 9


@dataclass(frozen=True)
class WeightVector:
    """Per-remaining-week gain weights.

    Playoff weeks get the configured playoff weight; the remaining regular
    weeks get a compensating weight chosen so the total weight mass equals
    the number of remaining weeks.
    """
    weights: Mapping[int, float]
    playoff_weeks_left: int
    regular_weeks_left: int
    regular_weight: float

    def __post_init__(self) -> None:
        total = 0.0
        for week in sorted(self.weights):
            total += self.weights[week]
        expected = self.playoff_weeks_left + self.regular_weeks_left
        if abs(total - expected) > 1e-9:
            raise ValidationError(
                f"weight mass {total} does not match remaining weeks {expected}"
            )


def weight_vector(snapshot: LeagueSnapshot, playoff_weight: float) -> WeightVector:
    """Weights for the user's per-week gains.

    When every remaining week is a playoff week there is no regular-week mass
    to borrow from, so all weights collapse to 1.0.
    """
    if playoff_weight <= 0.0:
        raise ValidationError("playoff_weight must be > 0")
    weeks = snapshot.remaining_weeks
    playoff_left = sum(1 for w in weeks if w in snapshot.playoff_weeks)
    regular_left = len(weeks) - playoff_left
    if regular_left == 0:
        return WeightVector(
            weights={w: 1.0 for w in weeks},
            playoff_weeks_left=playoff_left,
            regular_weeks_left=0,
            regular_weight=1.0,
        )
    regular_weight = (
        playoff_left + regular_left - playoff_weight * playoff_left
    ) / regular_left
    weights = {
        w: playoff_weight if w in snapshot.playoff_weeks else regular_weight
        for w in weeks
    }
    return WeightVector(
        weights=weights,
        playoff_weeks_left=playoff_left,
        regular_weeks_left=regular_left,
        regular_weight=regular_weight,
    )


def trade_cost(
    weighted_gain_a: float, gain_b: float, config: EngineConfig
) -> float:
    """Cost minimized by the optimizer; more negative is better.

    Rewards both sides' gains and penalizes their imbalance.  The user's side
    enters playoff-weighted, the opponent's unweighted.
    """
    return -(
        config.alpha * weighted_gain_a
        + config.beta * gain_b
        - config.gamma * abs(weighted_gain_a - gain_b)
    )


# -----------------------------
# Lineup kernel
# -----------------------------
#
# Per week, the optimal lineup decomposes by position: each dedicated slot
# takes the i-th best projection at that position or the positional ceiling,
# whichever is higher, and FLEX takes the best among the flex ceilings and
# each flex position's next-best projection after its dedicated slots.  A
# player displaced from a dedicated slot by a ceiling is worth less than that
# ceiling, hence less than the flex ceiling, so it can never win FLEX; the
# closed form is exact.  Tests still assert equality against brute-force
# enumeration rather than trusting this argument.
#
# All rows are (n_weeks,)-shaped float64 arrays; a "matrix" stacks one row
# per player at a position.


def _position_rows(
    matrix: Optional[np.ndarray], slots: int, ceiling_row: np.ndarray
) -> tuple[list[np.ndarray], Optional[np.ndarray]]:
    """Per-slot weekly values for one dedicated position, plus the leftover
    row (next-best projection) available to FLEX."""
    if matrix is None or matrix.shape[0] == 0:
        return [ceiling_row] * slots, None
    ordered = np.sort(matrix, axis=0)[::-1]
    rows = [
        np.maximum(ordered[i], ceiling_row) if i < ordered.shape[0] else ceiling_row
        for i in range(slots)
    ]
    leftover = ordered[slots] if ordered.shape[0] > slots else None
    return rows, leftover


def _flex_row(
    flex_ceiling_row: np.ndarray,
    leftovers: Mapping[Position, Optional[np.ndarray]],
) -> np.ndarray:
    row = flex_ceiling_row
    for pos in FLEX_ELIGIBLE:
        leftover = leftovers[pos]
        if leftover is not None:
            row = np.maximum(row, leftover)
    return row


def _assemble_rows(
    pos_rows: Mapping[Position, list[np.ndarray]], flex_row: np.ndarray
) -> list[np.ndarray]:
    """The nine slot rows in canonical accumulation order."""
    return [
        pos_rows[Position.QB][0],
        pos_rows[Position.RB][0],
        pos_rows[Position.RB][1],
        pos_rows[Position.WR][0],
        pos_rows[Position.WR][1],
        pos_rows[Position.TE][0],
        flex_row,
        pos_rows[Position.K][0],
        pos_rows[Position.DST][0],
    ]


def _weekly_totals(rows: Sequence[np.ndarray]) -> np.ndarray:
    # Left-to-right accumulation in slot order, starting from zero, matching
    # a scalar per-slot summation exactly.
    total = np.zeros_like(rows[0])
    for row in rows:
        total = total + row
    return total


def _ceiling_rows(
    ceilings: FreeAgentCeilings, weeks: Sequence[int]
) -> dict[Position, np.ndarray]:
    return {
        pos: np.array([ceilings.get(pos, w) for w in weeks], dtype=np.float64)
        for pos in Position
    }


def _week_vector(player: PlayerProjection, weeks: Sequence[int]) -> np.ndarray:
    return np.array([player.points(w) for w in weeks], dtype=np.float64)


def _group_matrices(
    members: Mapping[Position, list[np.ndarray]]
) -> dict[Position, Optional[np.ndarray]]:
    return {
        pos: np.stack(vectors) if vectors else None
        for pos, vectors in members.items()
    }


def _score_rows(
    matrices: Mapping[Position, Optional[np.ndarray]],
    ceiling_rows: Mapping[Position, np.ndarray],
    flex_ceiling_row: np.ndarray,
) -> tuple[dict[Position, list[np.ndarray]], dict[Position, Optional[np.ndarray]], np.ndarray]:
    pos_rows: dict[Position, list[np.ndarray]] = {}
    leftovers: dict[Position, Optional[np.ndarray]] = {}
    for pos, slots in DEDICATED_SLOT_COUNTS.items():
        pos_rows[pos], leftovers[pos] = _position_rows(
            matrices.get(pos), slots, ceiling_rows[pos]
        )
    flex = _flex_row(flex_ceiling_row, leftovers)
    return pos_rows, leftovers, flex


def optimal_lineup_score(
    roster: Roster, week: int, ceilings: FreeAgentCeilings
) -> float:
    """Maximum projected points over all valid 9-slot lineups for one week.

    Slots no rostered player can fill fall back to the free-agent ceiling for
    that position (for FLEX, the best ceiling among RB/WR/TE).
    """
    if not (MIN_WEEK <= week <= MAX_FINAL_WEEK):
        raise ValidationError(f"week {week} outside {MIN_WEEK}..{MAX_FINAL_WEEK}")
    weeks = (week,)
    members: dict[Position, list[np.ndarray]] = {pos: [] for pos in Position}
    for player in roster.players:
        members[player.position].append(_week_vector(player, weeks))
    ceiling_rows = _ceiling_rows(ceilings, weeks)
    flex_ceiling = np.maximum(
        np.maximum(ceiling_rows[Position.RB], ceiling_rows[Position.WR]),
        ceiling_rows[Position.TE],
    )
    pos_rows, _, flex = _score_rows(_group_matrices(members), ceiling_rows, flex_ceiling)
    totals = _weekly_totals(_assemble_rows(pos_rows, flex))
    return float(totals[0])


def season_score(roster: Roster, snapshot: LeagueSnapshot) -> float:
    """Sum of optimal weekly lineup scores over the remaining weeks."""
    total = 0.0
    for week in snapshot.remaining_weeks:
        total += optimal_lineup_score(roster, week, snapshot.ceilings)
    return total


# -----------------------------
# Trade evaluation
# -----------------------------

class _TeamBase:
    """One team's precomputed scoring state over the remaining weeks."""

    def __init__(
        self,
        roster: Roster,
        weeks: Sequence[int],
        ceiling_rows: Mapping[Position, np.ndarray],
        flex_ceiling_row: np.ndarray,
    ):
        self.vectors: dict[str, tuple[Position, np.ndarray]] = {}
        members: dict[Position, list[tuple[str, np.ndarray]]] = {
            pos: [] for pos in Position
        }
        # Sort by player_id so array layouts (and thus float results) never
        # depend on roster declaration order.
        for player in sorted(roster.players, key=lambda p: p.player_id):
            vec = _week_vector(player, weeks)
            self.vectors[player.player_id] = (player.position, vec)
            members[player.position].append((player.player_id, vec))
        self.members = members
        matrices = _group_matrices(
            {pos: [vec for _, vec in entries] for pos, entries in members.items()}
        )
        self.pos_rows, self.leftovers, self.flex = _score_rows(
            matrices, ceiling_rows, flex_ceiling_row
        )
        self.totals = _weekly_totals(_assemble_rows(self.pos_rows, self.flex))


class TradeEvaluator:
    """Scores trades against one (snapshot, config) pair, with caching.

    Baseline slot rows per team are computed once; a trade recomputes only
    the positions its players occupy.  Caching by trade identity is sound
    because evaluation is a pure function of (trade, snapshot, config).
    ``requests`` counts every evaluate() call, cache hits included, and is
    the engine's sample-budget measure.
    """

    def __init__(self, snapshot: LeagueSnapshot, config: EngineConfig):
        self.snapshot = snapshot
        self.config = config
        self.weeks = snapshot.remaining_weeks
        self.weight_vector = weight_vector(snapshot, config.playoff_weight)
        self._weights = [self.weight_vector.weights[w] for w in self.weeks]
        self._ceiling_rows = _ceiling_rows(snapshot.ceilings, self.weeks)
        self._flex_ceiling = np.maximum(
            np.maximum(
                self._ceiling_rows[Position.RB], self._ceiling_rows[Position.WR]
            ),
            self._ceiling_rows[Position.TE],
        )
        self._teams: dict[str, _TeamBase] = {}
        self._cache: dict[Trade, TradeEvaluation] = {}
        self.requests = 0
        self.computed = 0

    def scoring_key(self) -> tuple:
        """The config fields evaluation results actually depend on."""
        c = self.config
        return (c.alpha, c.beta, c.gamma, c.playoff_weight)

    def _team_base(self, team_id: str) -> _TeamBase:
        base = self._teams.get(team_id)
        if base is None:
            base = _TeamBase(
                self.snapshot.team(team_id),
                self.weeks,
                self._ceiling_rows,
                self._flex_ceiling,
            )
            self._teams[team_id] = base
        return base

    def _post_trade_totals(
        self,
        base: _TeamBase,
        removed: frozenset[str],
        added: Sequence[tuple[str, Position, np.ndarray]],
        touched: frozenset[Position],
    ) -> np.ndarray:
        fresh_rows: dict[Position, list[np.ndarray]] = {}
        fresh_leftovers: dict[Position, Optional[np.ndarray]] = {}
        for pos in touched:
            vectors = [
                vec for pid, vec in base.members[pos] if pid not in removed
            ]
            vectors += [vec for _, p, vec in added if p is pos]
            matrix = np.stack(vectors) if vectors else None
            fresh_rows[pos], fresh_leftovers[pos] = _position_rows(
                matrix, DEDICATED_SLOT_COUNTS[pos], self._ceiling_rows[pos]
            )
        pos_rows = {
            pos: fresh_rows.get(pos, base.pos_rows[pos])
            for pos in DEDICATED_SLOT_COUNTS
        }
        if any(pos in FLEX_ELIGIBLE for pos in touched):
            leftovers = {
                pos: fresh_leftovers.get(pos, base.leftovers[pos])
                for pos in DEDICATED_SLOT_COUNTS
            }
            flex = _flex_row(self._flex_ceiling, leftovers)
        else:
            flex = base.flex
        return _weekly_totals(_assemble_rows(pos_rows, flex))

    def evaluate(self, trade: Trade) -> TradeEvaluation:
        self.requests += 1
        cached = self._cache.get(trade)
        if cached is not None:
            return cached
        user, opponent = resolve_trade(
            trade, self.snapshot, self.config.max_players_per_side
        )
        self.computed += 1
        base_a = self._team_base(user.team_id)
        base_b = self._team_base(opponent.team_id)
        giving = [
            (pid, *base_a.vectors[pid]) for pid in trade.giving
        ]
        receiving = [
            (pid, *base_b.vectors[pid]) for pid in trade.receiving
        ]
        touched = frozenset(pos for _, pos, _ in giving + receiving)
        after_a = self._post_trade_totals(
            base_a, frozenset(trade.giving), receiving, touched
        )
        after_b = self._post_trade_totals(
            base_b, frozenset(trade.receiving), giving, touched
        )
        weekly_a = {
            w: float(after_a[i] - base_a.totals[i])
            for i, w in enumerate(self.weeks)
        }
        weekly_b = {
            w: float(after_b[i] - base_b.totals[i])
            for i, w in enumerate(self.weeks)
        }
        gain_a = 0.0
        gain_b = 0.0
        weighted_gain_a = 0.0
        for i, w in enumerate(self.weeks):
            gain_a += weekly_a[w]
            gain_b += weekly_b[w]
            weighted_gain_a += self._weights[i] * weekly_a[w]
        evaluation = TradeEvaluation(
            weekly_gain_a=weekly_a,
            weekly_gain_b=weekly_b,
            gain_a=gain_a,
            gain_b=gain_b,
            weighted_gain_a=weighted_gain_a,
            cost=trade_cost(weighted_gain_a, gain_b, self.config),
            feasible=gain_a > 0.0 and gain_b > 0.0,
        )
        self._cache[trade] = evaluation
        return evaluation


def evaluate_trade(
    trade: Trade, snapshot: LeagueSnapshot, config: EngineConfig
) -> TradeEvaluation:
    """One-shot trade evaluation; see TradeEvaluator for repeated use."""
    return TradeEvaluator(snapshot, config).evaluate(trade)
