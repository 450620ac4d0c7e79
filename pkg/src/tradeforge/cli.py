"""Command-line interface.

Batch counterpart to the HTTP service: optimize a snapshot to CSV, evaluate
a single trade, or compare the engine against the random baseline.  All
outputs for a fixed seed are byte-for-byte reproducible.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import tempfile
from typing import Optional

from .domain import (
    EngineConfig,
    LeagueSnapshot,
    Trade,
    ValidationError,
    build_config,
)
from .engine import enumerate_all_trades, random_baseline, run
from .ingest import export_trades_csv, load_snapshot, trade_table_rows
from .oracle import brute_force_best_trade
from .scoring import evaluate_trade

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3

PROGRESS_EVERY = 500


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", default="default",
                        help="strategy preset (default, high_playoff, user_gain, "
                             "opponent_deemphasis, fairness)")
    parser.add_argument("--alpha", type=float, help="weight on your gain")
    parser.add_argument("--beta", type=float, help="weight on opponent gain")
    parser.add_argument("--gamma", type=float, help="imbalance penalty weight")
    parser.add_argument("--playoff-weight", type=float,
                        help="multiplier on playoff-week gains")
    parser.add_argument("--playoff-weeks",
                        help="comma-separated playoff weeks, e.g. 15,16,17 "
                             "(overrides the snapshot)")
    parser.add_argument("--max-players", type=int,
                        help="max players per trade side")
    parser.add_argument("--generations", type=int)
    parser.add_argument("--population", type=int, help="max population size")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--threshold", type=float,
                        help="cost threshold for keeping trades")
    parser.add_argument("--keep-prob", type=float,
                        help="probability of keeping above-threshold trades")


def _config_from_args(args: argparse.Namespace) -> EngineConfig:
    overrides: dict[str, object] = {}
    mapping = {
        "alpha": "alpha",
        "beta": "beta",
        "gamma": "gamma",
        "playoff_weight": "playoff_weight",
        "max_players": "max_players_per_side",
        "generations": "generations",
        "population": "max_population",
        "seed": "rng_seed",
        "threshold": "filter_cost_threshold",
        "keep_prob": "filter_keep_prob",
    }
    for arg_name, field in mapping.items():
        value = getattr(args, arg_name, None)
        if value is not None:
            overrides[field] = value
    return build_config(args.preset, overrides)


def _read_snapshot(args: argparse.Namespace) -> LeagueSnapshot:
    with open(args.snapshot, "rb") as handle:
        snapshot = load_snapshot(handle.read())
    override = getattr(args, "playoff_weeks", None)
    if override is not None:
        try:
            weeks = frozenset(int(part) for part in override.split(","))
        except ValueError:
            raise ValidationError(
                f"--playoff-weeks must be comma-separated integers, got "
                f"{override!r}"
            ) from None
        snapshot = dataclasses.replace(snapshot, playoff_weeks=weeks)
    return snapshot


def _write_atomic(path: str, data: bytes) -> None:
    # Never leave a partial file behind: write a sibling temp file, then rename.
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".trade-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _split_ids(raw: str, flag: str) -> tuple[str, ...]:
    ids = tuple(part.strip() for part in raw.split(",") if part.strip())
    if not ids:
        raise ValidationError(f"{flag} needs at least one player id")
    return ids


def _progress_printer(quiet: bool):
    if quiet:
        return None

    def report(done: int, total: int, best: Optional[float]) -> None:
        if done % PROGRESS_EVERY == 0 or done == total:
            best_text = f"{best:.2f}" if best is not None else "none"
            print(
                f"generation {done}/{total}, best cost {best_text}",
                file=sys.stderr,
            )

    return report


# -----------------------------
# Subcommands
# -----------------------------

def cmd_optimize(args: argparse.Namespace) -> int:
    snapshot = _read_snapshot(args)
    config = _config_from_args(args)
    result = run(snapshot, config, progress_cb=_progress_printer(args.quiet))
    if args.out:
        _write_atomic(args.out, export_trades_csv(result, snapshot))

    rows = trade_table_rows(result, snapshot)
    print(f"{len(rows)} trades found")
    for rank, row in enumerate(rows[:10], start=1):
        print(
            f"{rank:>3}. cost {row.cost:.2f}  my gain {row.gain_a:.2f}  "
            f"their gain {row.gain_b:.2f}  give: {row.giving_names}  "
            f"get: {row.receiving_names}"
        )
    if result.best_per_team:
        print("best per opponent:")
        for team_id in sorted(result.best_per_team):
            best = result.best_per_team[team_id]
            print(
                f"  {snapshot.team(team_id).team_name}: "
                f"cost {best.evaluation.cost:.2f}"
            )
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    snapshot = _read_snapshot(args)
    config = _config_from_args(args)
    trade = Trade(
        opponent_team_id=args.opponent,
        giving=_split_ids(args.give, "--give"),
        receiving=_split_ids(args.get, "--get"),
    )
    evaluation = evaluate_trade(trade, snapshot, config)
    print("week  my gain  their gain")
    for week in sorted(evaluation.weekly_gain_a):
        print(
            f"{week:>4}  {evaluation.weekly_gain_a[week]:>7.2f}  "
            f"{evaluation.weekly_gain_b[week]:>10.2f}"
        )
    print(f"season gain (mine):     {evaluation.gain_a:.2f}")
    print(f"season gain (theirs):   {evaluation.gain_b:.2f}")
    print(f"weighted gain (mine):   {evaluation.weighted_gain_a:.2f}")
    print(f"cost:                   {evaluation.cost:.2f}")
    print(f"feasible:               {'yes' if evaluation.feasible else 'no'}")
    return EXIT_OK


def cmd_baseline(args: argparse.Namespace) -> int:
    snapshot = _read_snapshot(args)
    config = _config_from_args(args)
    if args.exhaustive:
        everything = enumerate_all_trades(snapshot, config)
        feasible = [ind for ind in everything if ind.evaluation.feasible]
        best = feasible[0] if feasible else None
        print(f"exhaustive: {len(everything)} candidates evaluated")
    else:
        outcome = random_baseline(snapshot, config, samples=args.samples)
        best = outcome.best
        print(
            f"sampled {outcome.samples} of {outcome.candidate_count} candidates"
        )
    if best is None:
        print("no baseline trade found")
    else:
        print(f"baseline best cost: {best.evaluation.cost:.2f}")

    result = run(snapshot, config, progress_cb=_progress_printer(args.quiet))
    engine_best = result.final_population.best
    if engine_best is None:
        print("engine: no feasible trade found")
    else:
        print(f"engine best cost:   {engine_best.evaluation.cost:.2f}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    # Unlisted: exhaustive reference search for verifying small instances.
    snapshot = _read_snapshot(args)
    config = _config_from_args(args)
    best = brute_force_best_trade(snapshot, config)
    if best is None:
        print("no feasible trade exists")
        return EXIT_OK
    print(f"optimum cost: {best.evaluation.cost!r}")
    print(f"opponent: {best.trade.opponent_team_id}")
    print(f"give: {', '.join(best.trade.giving)}")
    print(f"get: {', '.join(best.trade.receiving)}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host = args.host or os.environ.get("TRADEFORGE_HOST", "127.0.0.1")
    port = args.port or int(os.environ.get("TRADEFORGE_PORT", "8734"))
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tradeforge",
        description="Find mutually beneficial fantasy football trades.",
    )
    sub = parser.add_subparsers(
        dest="command",
        required=True,
        metavar="{optimize,evaluate,baseline,serve}",
    )

    optimize = sub.add_parser("optimize", help="run the optimizer, export CSV")
    optimize.add_argument("--snapshot", required=True, help="league snapshot file")
    optimize.add_argument("--out", help="CSV output path")
    optimize.add_argument("--quiet", action="store_true",
                          help="suppress progress output")
    _add_config_flags(optimize)
    optimize.set_defaults(func=cmd_optimize)

    evaluate = sub.add_parser("evaluate", help="evaluate one specific trade")
    evaluate.add_argument("--snapshot", required=True)
    evaluate.add_argument("--opponent", required=True, help="opponent team id")
    evaluate.add_argument("--give", required=True,
                          help="comma-separated player ids you give away")
    evaluate.add_argument("--get", required=True,
                          help="comma-separated player ids you receive")
    _add_config_flags(evaluate)
    evaluate.set_defaults(func=cmd_evaluate)

    baseline = sub.add_parser("baseline",
                              help="compare engine against random sampling")
    baseline.add_argument("--snapshot", required=True)
    baseline.add_argument("--samples", type=int, default=1000,
                          help="number of random candidates to sample")
    baseline.add_argument("--exhaustive", action="store_true",
                          help="evaluate every candidate instead of sampling")
    baseline.add_argument("--quiet", action="store_true")
    _add_config_flags(baseline)
    baseline.set_defaults(func=cmd_baseline)

    oracle = sub.add_parser("oracle")
    oracle.add_argument("--snapshot", required=True)
    _add_config_flags(oracle)
    oracle.set_defaults(func=cmd_oracle)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", help="bind address (default loopback)")
    serve.add_argument("--port", type=int)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
