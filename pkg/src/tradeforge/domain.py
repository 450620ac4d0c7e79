"""Core immutable data types shared by every other module.

Everything here is construction-validated and frozen; instances are safe to
share across threads.  Behavior (scoring, evolution, serialization) lives in
the sibling modules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Optional


class ValidationError(ValueError):
    """Raised when a domain object or config fails its invariants."""


# -----------------------------
# Players, rosters, league
# -----------------------------

class Position(str, Enum):
    QB = "QB"
    RB = "RB"
    WR = "WR"
    TE = "TE"
    K = "K"
    DST = "DST"
    # FLEX is a lineup slot, not a player position; it never appears here.


MIN_WEEK = 1
MAX_PROJECTION_WEEK = 17   # weekly projections run 1..17
MAX_FINAL_WEEK = 18

DEFAULT_FINAL_WEEK = 17
DEFAULT_PLAYOFF_WEEKS = frozenset({15, 16, 17})


@dataclass(frozen=True)
class PlayerProjection:
    """A rostered (or free-agent) athlete with per-week projected points.

    Weeks missing from ``weekly_points`` count as 0.0; that is how byes and
    unprojected weeks are modeled.
    """
    player_id: str
    name: str
    position: Position
    weekly_points: Mapping[int, float]

    def __post_init__(self) -> None:
        if not self.player_id:
            raise ValidationError("player_id must be non-empty")
        cleaned: dict[int, float] = {}
        for week, pts in self.weekly_points.items():
            week = int(week)
            if not (MIN_WEEK <= week <= MAX_PROJECTION_WEEK):
                raise ValidationError(
                    f"player {self.player_id!r}: week {week} outside "
                    f"{MIN_WEEK}..{MAX_PROJECTION_WEEK}"
                )
            pts = float(pts)
            if not math.isfinite(pts) or pts < 0.0:
                raise ValidationError(
                    f"player {self.player_id!r}: week {week} points must be "
                    f"finite and non-negative, got {pts}"
                )
            cleaned[week] = pts
        object.__setattr__(self, "weekly_points", cleaned)

    def points(self, week: int) -> float:
        return self.weekly_points.get(week, 0.0)


@dataclass(frozen=True)
class Roster:
    """One team's player set.  May be empty."""
    team_id: str
    team_name: str
    players: tuple[PlayerProjection, ...]

    def __post_init__(self) -> None:
        if not self.team_id:
            raise ValidationError("team_id must be non-empty")
        object.__setattr__(self, "players", tuple(self.players))
        seen: set[str] = set()
        for p in self.players:
            if p.player_id in seen:
                raise ValidationError(
                    f"roster {self.team_id!r}: duplicate player_id {p.player_id!r}"
                )
            seen.add(p.player_id)

    def player_ids(self) -> frozenset[str]:
        return frozenset(p.player_id for p in self.players)

    def find(self, player_id: str) -> Optional[PlayerProjection]:
        for p in self.players:
            if p.player_id == player_id:
                return p
        return None


class FreeAgentCeilings:
    """Best undrafted projected points per (position, week).

    Used to fill lineup gaps a bench cannot cover.  Lookups for absent
    entries return 0.0.
    """

    def __init__(self, values: Mapping[tuple[Position, int], float] | None = None):
        cleaned: dict[tuple[Position, int], float] = {}
        for (pos, week), pts in (values or {}).items():
            pos = Position(pos)
            week = int(week)
            pts = float(pts)
            if not math.isfinite(pts) or pts < 0.0:
                raise ValidationError(
                    f"ceiling ({pos.value}, week {week}) must be finite and "
                    f"non-negative, got {pts}"
                )
            cleaned[(pos, week)] = pts
        self._values = cleaned

    def get(self, position: Position, week: int) -> float:
        return self._values.get((position, week), 0.0)

    def items(self) -> Iterable[tuple[tuple[Position, int], float]]:
        return self._values.items()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeAgentCeilings):
            return NotImplemented
        return self._values == other._values

    def __repr__(self) -> str:
        return f"FreeAgentCeilings({len(self._values)} entries)"

    @classmethod
    def from_free_agents(
        cls, free_agents: Iterable[PlayerProjection]
    ) -> "FreeAgentCeilings":
        """Per-(position, week) max projection over the given free agents."""
        best: dict[tuple[Position, int], float] = {}
        for fa in free_agents:
            for week, pts in fa.weekly_points.items():
                key = (fa.position, week)
                if pts > best.get(key, 0.0):
                    best[key] = pts
        return cls(best)


@dataclass(frozen=True)
class LeagueSnapshot:
    """The complete input universe: all teams, the week window, and ceilings."""
    user_team_id: str
    teams: tuple[Roster, ...]
    current_week: int
    final_week: int = DEFAULT_FINAL_WEEK
    playoff_weeks: frozenset[int] = DEFAULT_PLAYOFF_WEEKS
    ceilings: FreeAgentCeilings = field(default_factory=FreeAgentCeilings)

    def __post_init__(self) -> None:
        object.__setattr__(self, "teams", tuple(self.teams))
        object.__setattr__(self, "playoff_weeks", frozenset(self.playoff_weeks))
        if len(self.teams) < 2:
            raise ValidationError("league needs at least 2 teams")
        ids = [t.team_id for t in self.teams]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate team_id in league")
        if ids.count(self.user_team_id) != 1:
            raise ValidationError(
                f"user_team_id {self.user_team_id!r} does not name exactly one team"
            )
        if not (MIN_WEEK <= self.current_week <= self.final_week <= MAX_FINAL_WEEK):
            raise ValidationError(
                f"need 1 <= current_week ({self.current_week}) <= final_week "
                f"({self.final_week}) <= {MAX_FINAL_WEEK}"
            )
        for w in self.playoff_weeks:
            if not (MIN_WEEK <= w <= self.final_week):
                raise ValidationError(
                    f"playoff week {w} outside 1..{self.final_week}"
                )
        all_ids: set[str] = set()
        for team in self.teams:
            for p in team.players:
                if p.player_id in all_ids:
                    raise ValidationError(
                        f"player_id {p.player_id!r} appears on more than one roster"
                    )
                all_ids.add(p.player_id)

    def team(self, team_id: str) -> Roster:
        for t in self.teams:
            if t.team_id == team_id:
                return t
        raise ValidationError(f"unknown team_id {team_id!r}")

    @property
    def user_team(self) -> Roster:
        return self.team(self.user_team_id)

    @property
    def opponents(self) -> tuple[Roster, ...]:
        return tuple(t for t in self.teams if t.team_id != self.user_team_id)

    @property
    def remaining_weeks(self) -> tuple[int, ...]:
        return tuple(range(self.current_week, self.final_week + 1))


# -----------------------------
# Trades and their evaluations
# -----------------------------

@dataclass(frozen=True)
class Trade:
    """An exchange of player subsets with one opponent.

    ``giving`` leaves the user's roster, ``receiving`` leaves the opponent's.
    Sides are stored sorted, so two trades built from permuted player lists
    compare (and hash) equal; that tuple is the canonical trade identity.
    """
    opponent_team_id: str
    giving: tuple[str, ...]
    receiving: tuple[str, ...]

    def __post_init__(self) -> None:
        giving = tuple(sorted(self.giving))
        receiving = tuple(sorted(self.receiving))
        object.__setattr__(self, "giving", giving)
        object.__setattr__(self, "receiving", receiving)
        if not giving or not receiving:
            raise ValidationError("both trade sides must be non-empty")
        if len(set(giving)) != len(giving) or len(set(receiving)) != len(receiving):
            raise ValidationError("duplicate player_id within a trade side")
        if set(giving) & set(receiving):
            raise ValidationError("a player cannot appear on both trade sides")

    @property
    def total_players(self) -> int:
        return len(self.giving) + len(self.receiving)

    def identity(self) -> tuple:
        return (self.opponent_team_id, self.giving, self.receiving)


@dataclass(frozen=True)
class TradeEvaluation:
    """All scoring outputs for one trade.

    ``gain_a``/``gain_b`` are the unweighted season gains for the user and
    the opponent; ``weighted_gain_a`` applies the playoff weighting to the
    user's per-week gains.  ``feasible`` means both unweighted gains are
    strictly positive.
    """
    weekly_gain_a: Mapping[int, float]
    weekly_gain_b: Mapping[int, float]
    gain_a: float
    gain_b: float
    weighted_gain_a: float
    cost: float
    feasible: bool

    def __post_init__(self) -> None:
        for label, weekly, total in (
            ("gain_a", self.weekly_gain_a, self.gain_a),
            ("gain_b", self.weekly_gain_b, self.gain_b),
        ):
            acc = 0.0
            for week in sorted(weekly):
                acc += weekly[week]
            if abs(acc - total) > 1e-9:
                raise ValidationError(
                    f"{label} ({total}) does not match weekly sum ({acc})"
                )
        if self.feasible != (self.gain_a > 0.0 and self.gain_b > 0.0):
            raise ValidationError("feasible flag inconsistent with gains")


def resolve_trade(
    trade: Trade, snapshot: LeagueSnapshot, max_players_per_side: int
) -> tuple[Roster, Roster]:
    """Check a trade against a snapshot; returns (user roster, opponent roster).

    Raises ValidationError naming the first offending player id or the
    violated size bound.
    """
    opponent = snapshot.team(trade.opponent_team_id)
    if opponent.team_id == snapshot.user_team_id:
        raise ValidationError("cannot trade with your own team")
    if len(trade.giving) > max_players_per_side:
        raise ValidationError(
            f"giving side has {len(trade.giving)} players, max is "
            f"{max_players_per_side}"
        )
    if len(trade.receiving) > max_players_per_side:
        raise ValidationError(
            f"receiving side has {len(trade.receiving)} players, max is "
            f"{max_players_per_side}"
        )
    user = snapshot.user_team
    user_ids = user.player_ids()
    opp_ids = opponent.player_ids()
    for pid in trade.giving:
        if pid not in user_ids:
            raise ValidationError(f"player {pid!r} is not on the user's roster")
    for pid in trade.receiving:
        if pid not in opp_ids:
            raise ValidationError(
                f"player {pid!r} is not on roster {opponent.team_id!r}"
            )
    return user, opponent


# -----------------------------
# Engine configuration
# -----------------------------

DEFAULT_MUTATION_PROBS = (0.2, 0.16, 0.16, 0.16, 0.16, 0.16)


@dataclass(frozen=True)
class EngineConfig:
    """Every knob the optimizer reads.

    ``alpha``/``beta`` weight the user's and opponent's gains in the cost,
    ``gamma`` scales the fairness penalty, and ``playoff_weight`` amplifies
    the user's playoff-week gains (non-playoff weeks are scaled down so the
    total weight mass is conserved).
    """
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 0.25
    playoff_weight: float = 1.2
    max_players_per_side: int = 3
    generations: int = 5000
    max_population: int = 100
    mutation_probs: tuple[float, ...] = DEFAULT_MUTATION_PROBS
    elite_top_n: int = 15
    elite_per_team: int = 2
    filter_cost_threshold: float = 0.0
    filter_keep_prob: float = 0.3
    rng_seed: int = 0

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.mutation_probs)
        object.__setattr__(self, "mutation_probs", probs)
        if len(probs) != 6:
            raise ValidationError("mutation_probs must have exactly 6 entries")
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise ValidationError("mutation_probs entries must be in [0, 1]")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ValidationError(
                f"mutation_probs must sum to 1.0, got {sum(probs)}"
            )
        if self.playoff_weight <= 0.0:
            raise ValidationError("playoff_weight must be > 0")
        # generations == 0 is allowed: it yields the filtered initial population.
        if self.generations < 0:
            raise ValidationError("generations must be >= 0")
        if self.max_population < 1:
            raise ValidationError("max_population must be >= 1")
        if self.max_players_per_side < 1:
            raise ValidationError("max_players_per_side must be >= 1")
        if not (0.0 <= self.filter_keep_prob <= 1.0):
            raise ValidationError("filter_keep_prob must be in [0, 1]")
        if self.elite_top_n < 0 or self.elite_per_team < 0:
            raise ValidationError("elitism counts must be >= 0")
        if not (0 <= self.rng_seed < 2**64):
            raise ValidationError("rng_seed must fit in an unsigned 64-bit int")


# The five shipped strategy presets; everything not listed stays at defaults.
PRESETS: dict[str, dict[str, float]] = {
    "default": {},
    "high_playoff": {"playoff_weight": 1.5},
    "user_gain": {"alpha": 1.2},
    "opponent_deemphasis": {"beta": 0.8, "gamma": 0.3},
    "fairness": {"gamma": 0.4},
}


def preset_config(name: str) -> EngineConfig:
    """Named hyperparameter preset; raises listing valid names if unknown."""
    try:
        overrides = PRESETS[name]
    except KeyError:
        valid = ", ".join(sorted(PRESETS))
        raise ValidationError(
            f"unknown preset {name!r}; valid presets: {valid}"
        ) from None
    return EngineConfig(**overrides)


def build_config(
    preset: str = "default", overrides: Mapping[str, object] | None = None
) -> EngineConfig:
    """Preset first, then field overrides; unknown field names are rejected."""
    config = preset_config(preset)
    if not overrides:
        return config
    valid_fields = set(EngineConfig.__dataclass_fields__)
    for key in overrides:
        if key not in valid_fields:
            raise ValidationError(f"unknown config field {key!r}")
    cleaned = dict(overrides)
    if "mutation_probs" in cleaned:
        cleaned["mutation_probs"] = tuple(cleaned["mutation_probs"])  # type: ignore[arg-type]
    return replace(config, **cleaned)  # type: ignore[arg-type]
