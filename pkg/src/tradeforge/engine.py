"""Genetic search over the trade space.

A population of candidate trades evolves through mutation, elitism, pruning,
and feasibility filtering.  All randomness flows through one seeded
``random.Random`` stream (CPython's Mersenne Twister; its output sequence per
seed is part of the compatibility surface), and every draw happens over a
deterministically ordered sequence, so runs are reproducible regardless of
hashing or iteration-order accidents.
"""
from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .domain import (
    EngineConfig,
    LeagueSnapshot,
    Roster,
    Trade,
    TradeEvaluation,
    ValidationError,
)
from .scoring import TradeEvaluator

# Costs within this distance count as equal for pruning.
COST_EPSILON = 1e-6

ENUMERATION_CAP = 10_000_000


class RunCancelled(Exception):
    """Raised inside run() when the caller's cancel check trips."""


@dataclass(frozen=True)
class Individual:
    """A candidate trade with its current evaluation."""
    trade: Trade
    evaluation: TradeEvaluation

    @property
    def cost(self) -> float:
        return self.evaluation.cost


@dataclass(frozen=True)
class Population:
    individuals: tuple[Individual, ...]
    generation_index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "individuals", tuple(self.individuals))
        identities = set()
        for ind in self.individuals:
            identity = ind.trade.identity()
            if identity in identities:
                raise ValidationError(f"duplicate trade in population: {identity}")
            identities.add(identity)

    def __len__(self) -> int:
        return len(self.individuals)

    @property
    def best(self) -> Optional[Individual]:
        return self.individuals[0] if self.individuals else None


@dataclass(frozen=True)
class RunResult:
    final_population: Population
    best_per_team: Mapping[str, Individual]
    history: tuple[Optional[float], ...]
    config: EngineConfig
    seed: int
    evaluations: int


def _sort_key(ind: Individual) -> tuple:
    # Ascending cost; trade identity as the tiebreak keeps every ordering
    # decision deterministic.
    return (ind.evaluation.cost, ind.trade.identity())


def _require_compatible(evaluator: TradeEvaluator, snapshot, config) -> None:
    if evaluator.snapshot is not snapshot and evaluator.snapshot != snapshot:
        raise ValidationError("evaluator was built for a different snapshot")
    expected = (config.alpha, config.beta, config.gamma, config.playoff_weight)
    if evaluator.scoring_key() != expected:
        raise ValidationError("evaluator was built for a different scoring config")


# -----------------------------
# Initialization
# -----------------------------

def initialize_population(
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    evaluator: Optional[TradeEvaluator] = None,
) -> Population:
    """All one-for-one trades that strictly benefit both sides.

    An empty result is legal; spawn-new mutations can still seed the search.
    """
    if evaluator is None:
        evaluator = TradeEvaluator(snapshot, config)
    else:
        _require_compatible(evaluator, snapshot, config)
    user_ids = sorted(snapshot.user_team.player_ids())
    individuals = []
    for opponent in snapshot.opponents:
        for their_id in sorted(opponent.player_ids()):
            for our_id in user_ids:
                trade = Trade(opponent.team_id, (our_id,), (their_id,))
                evaluation = evaluator.evaluate(trade)
                if evaluation.feasible:
                    individuals.append(Individual(trade, evaluation))
    individuals.sort(key=_sort_key)
    return Population(tuple(individuals), generation_index=0)


# -----------------------------
# Mutation
# -----------------------------

# Operator indices; mutation_probs uses the same order.
KEEP_SAME, ADD_OR_REMOVE, COMBINE, EXCHANGE, ADD_FROM_OTHER, SPAWN_NEW = range(6)


def pick_operator(rng: random.Random, probs: Sequence[float]) -> int:
    """One categorical draw over the operator distribution."""
    r = rng.random()
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if r < acc:
            return i
    return len(probs) - 1


def _same_opponent_others(
    population: Population, individual: Individual
) -> list[Individual]:
    trade = individual.trade
    return [
        other
        for other in population.individuals
        if other.trade.opponent_team_id == trade.opponent_team_id
        and other.trade != trade
    ]


def _mutated_trade(
    individual: Individual,
    population: Population,
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    rng: random.Random,
) -> Optional[Trade]:
    """Proposes a new trade, or None for keep-same (chosen or dead-end)."""
    operator = pick_operator(rng, config.mutation_probs)
    if operator == KEEP_SAME:
        return None
    trade = individual.trade
    m = config.max_players_per_side
    user = snapshot.user_team
    opponent = snapshot.team(trade.opponent_team_id)

    if operator == ADD_OR_REMOVE:
        on_giving_side = rng.random() < 0.5
        prefer_add = rng.random() < 0.5
        if on_giving_side:
            members, roster = trade.giving, user
        else:
            members, roster = trade.receiving, opponent
        addable = sorted(roster.player_ids() - set(members))
        can_add = len(members) < m and bool(addable)
        can_remove = len(members) > 1
        if prefer_add and not can_add:
            prefer_add = False
        if not prefer_add and not can_remove:
            if not can_add:
                return None
            prefer_add = True
        if prefer_add:
            new_members = members + (rng.choice(addable),)
        else:
            dropped = rng.choice(members)
            new_members = tuple(pid for pid in members if pid != dropped)
        if on_giving_side:
            return Trade(trade.opponent_team_id, new_members, trade.receiving)
        return Trade(trade.opponent_team_id, trade.giving, new_members)

    if operator == COMBINE:
        others = _same_opponent_others(population, individual)
        if not others:
            return None
        other = rng.choice(others).trade
        giving = sorted(set(trade.giving) | set(other.giving))
        receiving = sorted(set(trade.receiving) | set(other.receiving))
        if len(giving) > m:
            giving = rng.sample(giving, m)
        if len(receiving) > m:
            receiving = rng.sample(receiving, m)
        return Trade(trade.opponent_team_id, tuple(giving), tuple(receiving))

    if operator == EXCHANGE:
        on_giving_side = rng.random() < 0.5
        if on_giving_side:
            members, roster = trade.giving, user
        else:
            members, roster = trade.receiving, opponent
        replacements = sorted(roster.player_ids() - set(members))
        if not replacements:
            return None
        dropped = rng.choice(members)
        incoming = rng.choice(replacements)
        new_members = tuple(pid for pid in members if pid != dropped) + (incoming,)
        if on_giving_side:
            return Trade(trade.opponent_team_id, new_members, trade.receiving)
        return Trade(trade.opponent_team_id, trade.giving, new_members)

    if operator == ADD_FROM_OTHER:
        others = _same_opponent_others(population, individual)
        if not others:
            return None
        other = rng.choice(others).trade
        candidates: list[tuple[str, str]] = []
        if len(trade.giving) < m:
            candidates += [
                ("giving", pid) for pid in other.giving if pid not in trade.giving
            ]
        if len(trade.receiving) < m:
            candidates += [
                ("receiving", pid)
                for pid in other.receiving
                if pid not in trade.receiving
            ]
        if not candidates:
            return None
        side, pid = rng.choice(candidates)
        if side == "giving":
            return Trade(
                trade.opponent_team_id, trade.giving + (pid,), trade.receiving
            )
        return Trade(
            trade.opponent_team_id, trade.giving, trade.receiving + (pid,)
        )

    # spawn-new
    target = rng.choice(snapshot.opponents)
    user_ids = sorted(user.player_ids())
    their_ids = sorted(target.player_ids())
    if not user_ids or not their_ids:
        return None
    giving_size = rng.randint(1, min(m, len(user_ids)))
    receiving_size = rng.randint(1, min(m, len(their_ids)))
    giving = rng.sample(user_ids, giving_size)
    receiving = rng.sample(their_ids, receiving_size)
    return Trade(target.team_id, tuple(giving), tuple(receiving))


def mutate(
    individual: Individual,
    population: Population,
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    rng: random.Random,
    evaluator: Optional[TradeEvaluator] = None,
) -> Individual:
    """One mutation step.  Dead-ended operators fall back to keep-same."""
    if evaluator is None:
        evaluator = TradeEvaluator(snapshot, config)
    trade = _mutated_trade(individual, population, snapshot, config, rng)
    if trade is None or trade == individual.trade:
        return individual
    return Individual(trade, evaluator.evaluate(trade))


# -----------------------------
# The generation loop
# -----------------------------

def _select_elites(ordered: Sequence[Individual], config: EngineConfig) -> list[Individual]:
    chosen: dict[tuple, Individual] = {}
    for ind in ordered[: config.elite_top_n]:
        chosen[ind.trade.identity()] = ind
    per_team: dict[str, int] = {}
    for ind in ordered:
        team = ind.trade.opponent_team_id
        if per_team.get(team, 0) >= config.elite_per_team:
            continue
        per_team[team] = per_team.get(team, 0) + 1
        chosen.setdefault(ind.trade.identity(), ind)
    return list(chosen.values())


def _prune_near_equal_subsets(ordered: list[Individual]) -> list[Individual]:
    """Drop the larger of any same-cost pair where one trade's sides both
    contain the other's.  ``ordered`` must be sorted ascending by cost."""
    alive = [True] * len(ordered)
    by_team: dict[str, list[int]] = {}
    for idx, ind in enumerate(ordered):
        by_team.setdefault(ind.trade.opponent_team_id, []).append(idx)
    for indexes in by_team.values():
        for a_pos, a in enumerate(indexes):
            if not alive[a]:
                continue
            small = ordered[a].trade
            for b in indexes[a_pos + 1 :]:
                if ordered[b].cost - ordered[a].cost > COST_EPSILON:
                    break
                if not alive[b]:
                    continue
                big = ordered[b].trade
                if set(small.giving) <= set(big.giving) and set(
                    small.receiving
                ) <= set(big.receiving):
                    alive[b] = False
                elif set(big.giving) <= set(small.giving) and set(
                    big.receiving
                ) <= set(small.receiving):
                    alive[a] = False
                    break
    return [ind for ind, keep in zip(ordered, alive) if keep]


def run_generation(
    population: Population,
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    rng: random.Random,
    evaluator: Optional[TradeEvaluator] = None,
) -> Population:
    """One full generation: elitism, mutation, dedup, prune, filter, truncate."""
    if evaluator is None:
        evaluator = TradeEvaluator(snapshot, config)
    ordered = sorted(population.individuals, key=_sort_key)

    elites = _select_elites(ordered, config)
    offspring = [
        mutate(ind, population, snapshot, config, rng, evaluator)
        for ind in ordered
    ]

    merged: dict[tuple, Individual] = {}
    for ind in itertools.chain(elites, offspring):
        merged.setdefault(ind.trade.identity(), ind)
    # Re-evaluation is a no-op here: evaluations are pure and cached, and
    # every Individual already carries the current one.

    pool = sorted(merged.values(), key=_sort_key)
    pool = _prune_near_equal_subsets(pool)

    kept = []
    for ind in pool:
        if not ind.evaluation.feasible:
            continue                    # hard constraint, no probabilistic keep
        if ind.evaluation.cost < config.filter_cost_threshold:
            kept.append(ind)
        elif rng.random() < config.filter_keep_prob:
            kept.append(ind)

    kept.sort(key=_sort_key)
    return Population(
        tuple(kept[: config.max_population]),
        generation_index=population.generation_index + 1,
    )


def run(
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    evaluator: Optional[TradeEvaluator] = None,
    progress_cb: Optional[Callable[[int, int, Optional[float]], None]] = None,
    should_cancel: Optional[Callable[[], bool]] = None,
) -> RunResult:
    """Full optimization run.

    ``progress_cb(done, total, best_cost)`` fires after each generation;
    ``should_cancel`` is polled between generations and aborts the run by
    raising RunCancelled.  Passing a prebuilt evaluator shares its cache
    across runs; it must match the snapshot and scoring config.
    """
    if evaluator is None:
        evaluator = TradeEvaluator(snapshot, config)
    else:
        _require_compatible(evaluator, snapshot, config)
    requests_before = evaluator.requests
    rng = random.Random(config.rng_seed)
    population = initialize_population(snapshot, config, evaluator)
    history: list[Optional[float]] = []
    for generation in range(config.generations):
        if should_cancel is not None and should_cancel():
            raise RunCancelled(f"cancelled at generation {generation}")
        population = run_generation(population, snapshot, config, rng, evaluator)
        best = population.best
        history.append(best.cost if best is not None else None)
        if progress_cb is not None:
            progress_cb(
                generation + 1,
                config.generations,
                best.cost if best is not None else None,
            )
    best_per_team: dict[str, Individual] = {}
    for ind in population.individuals:
        best_per_team.setdefault(ind.trade.opponent_team_id, ind)
    return RunResult(
        final_population=population,
        best_per_team=best_per_team,
        history=tuple(history),
        config=config,
        seed=config.rng_seed,
        evaluations=evaluator.requests - requests_before,
    )


# -----------------------------
# Exhaustive enumeration and the random baseline
# -----------------------------

def _side_counts(roster_size: int, m: int) -> int:
    return sum(math.comb(roster_size, k) for k in range(1, min(m, roster_size) + 1))


def count_candidates(snapshot: LeagueSnapshot, config: EngineConfig) -> int:
    """Number of distinct trades with 1..m players per side, all opponents."""
    user_side = _side_counts(len(snapshot.user_team.players), config.max_players_per_side)
    return user_side * sum(
        _side_counts(len(opp.players), config.max_players_per_side)
        for opp in snapshot.opponents
    )


def _iter_candidates(
    snapshot: LeagueSnapshot, config: EngineConfig
) -> Iterable[Trade]:
    m = config.max_players_per_side
    user_ids = sorted(snapshot.user_team.player_ids())
    for opponent in snapshot.opponents:
        their_ids = sorted(opponent.player_ids())
        for giving_size in range(1, min(m, len(user_ids)) + 1):
            for giving in itertools.combinations(user_ids, giving_size):
                for receiving_size in range(1, min(m, len(their_ids)) + 1):
                    for receiving in itertools.combinations(
                        their_ids, receiving_size
                    ):
                        yield Trade(opponent.team_id, giving, receiving)


def enumerate_all_trades(
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    cap: int = ENUMERATION_CAP,
    evaluator: Optional[TradeEvaluator] = None,
) -> list[Individual]:
    """Every candidate trade, evaluated and sorted ascending by cost.

    Refuses instances whose candidate count exceeds ``cap``.
    """
    total = count_candidates(snapshot, config)
    if total > cap:
        raise ValidationError(
            f"candidate count {total} exceeds enumeration cap {cap}"
        )
    if evaluator is None:
        evaluator = TradeEvaluator(snapshot, config)
    else:
        _require_compatible(evaluator, snapshot, config)
    individuals = [
        Individual(trade, evaluator.evaluate(trade))
        for trade in _iter_candidates(snapshot, config)
    ]
    individuals.sort(key=_sort_key)
    return individuals


@dataclass(frozen=True)
class BaselineResult:
    """Outcome of uniform random sampling over the candidate space."""
    samples: int
    candidate_count: int
    best: Optional[Individual]       # best feasible sample, if any


def random_baseline(
    snapshot: LeagueSnapshot,
    config: EngineConfig,
    samples: int,
    rng: Optional[random.Random] = None,
    evaluator: Optional[TradeEvaluator] = None,
) -> BaselineResult:
    """Uniform sampling (with replacement) over all candidate trades.

    The candidate set is never materialized: a stratum (opponent, side sizes)
    is drawn weighted by its combinatorial count, then a uniform combination
    within it.  Infeasible samples never become ``best``; the baseline plays
    by the same hard constraints as the engine.
    """
    if rng is None:
        rng = random.Random(config.rng_seed)
    if evaluator is None:
        evaluator = TradeEvaluator(snapshot, config)
    else:
        _require_compatible(evaluator, snapshot, config)
    m = config.max_players_per_side
    user_ids = sorted(snapshot.user_team.player_ids())

    strata: list[tuple[Roster, int, int]] = []
    weights: list[int] = []
    for opponent in snapshot.opponents:
        their_size = len(opponent.players)
        for giving_size in range(1, min(m, len(user_ids)) + 1):
            for receiving_size in range(1, min(m, their_size) + 1):
                count = math.comb(len(user_ids), giving_size) * math.comb(
                    their_size, receiving_size
                )
                strata.append((opponent, giving_size, receiving_size))
                weights.append(count)
    total = sum(weights)
    if total == 0:
        return BaselineResult(samples=0, candidate_count=0, best=None)

    cumulative = list(itertools.accumulate(weights))
    best: Optional[Individual] = None
    for _ in range(samples):
        pick = rng.randrange(total)
        opponent, giving_size, receiving_size = strata[
            bisect.bisect_right(cumulative, pick)
        ]
        giving = rng.sample(user_ids, giving_size)
        receiving = rng.sample(sorted(opponent.player_ids()), receiving_size)
        trade = Trade(opponent.team_id, tuple(giving), tuple(receiving))
        evaluation = evaluator.evaluate(trade)
        if not evaluation.feasible:
            continue
        candidate = Individual(trade, evaluation)
        if best is None or _sort_key(candidate) < _sort_key(best):
            best = candidate
    return BaselineResult(samples=samples, candidate_count=total, best=best)
