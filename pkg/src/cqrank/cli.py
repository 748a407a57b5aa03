"""Command-line front end: rank, simulate, replay-paper, tune, bench.

Exit codes: 0 success, 1 input/validation error, 2 reproduction-check
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from random import Random
from typing import Iterable, TextIO

from .agents import run_default_session
from .alerts import AbsoluteBelow, Alert, AlertRule, check_alerts
from .benchmark import bench
from .config import RunConfig, default_config, load_config
from .core import Delta
from .engine import RankingEntry, RatingEngine
from .evaluation import ClassValueMatrix, ReplayReport, replay_paper, tune
from .eventlog import EventRecord, parse_event_log, serialize_event_log
from .paper_data import load_paper_dataset


def _fmt_value(value: float) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return f"{value:g}" if isinstance(value, float) else str(value)


def _rule_to_dict(rule: AlertRule) -> dict:
    if isinstance(rule.kind, AbsoluteBelow):
        kind = {"kind": "absolute_below", "threshold": rule.kind.threshold}
    else:
        kind = {"kind": "percentile_bottom", "fraction": rule.kind.fraction}
    return {**kind, "parameterization": rule.parameterization}


def _ranking_rows(entries: list[RankingEntry]) -> list[dict]:
    return [{"rank": e.rank, "player": e.player, "cqr": e.cqr} for e in entries]


def _print_rankings_table(rankings: dict[str, list[RankingEntry]], out: TextIO) -> None:
    for name, entries in rankings.items():
        print(f"ranking {name}", file=out)
        print(f"{'rank':>4}  {'player':<10} {'cqr':>14}", file=out)
        for e in entries:
            print(f"{e.rank:>4}  {e.player:<10} {_fmt_value(e.cqr):>14}", file=out)
        print(file=out)


def _print_alerts_table(alerts: list[Alert], out: TextIO) -> None:
    for alert in alerts:
        rule = _rule_to_dict(alert.rule)
        detail = ", ".join(f"{k}={v}" for k, v in rule.items() if k != "kind")
        print(f"ALERT {alert.player}: {rule['kind']} ({detail})", file=out)


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else default_config()
    if getattr(args, "output", None):
        config.output = args.output
    return config


def _read_lines(path: str) -> Iterable[str]:
    if path == "-":
        return sys.stdin
    return Path(path).read_text("utf-8").splitlines()


def _records_to_engine(records: list[EventRecord], engine: RatingEngine) -> None:
    for record in records:
        if record.action is not None:
            raise ValueError(
                f"record for player {record.player!r} seq {record.seq} carries an action "
                "payload; rank consumes measured delta records"
            )
        engine.record(record.player, Delta(value=record.delta, seq=record.seq))


def cmd_rank(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    if args.state_in:
        engine = RatingEngine.from_state_dict(json.loads(Path(args.state_in).read_text("utf-8")))
        snapshot = {(p.name, p.window, p.magnitude_threshold, p.run_length)
                    for p in engine.parameterizations}
        configured = {(p.name, p.window, p.magnitude_threshold, p.run_length)
                      for p in config.parameterizations}
        if snapshot != configured:
            raise ValueError("state snapshot parameterizations do not match the configuration")
    else:
        engine = RatingEngine(config.parameterizations)
    records = parse_event_log(_read_lines(args.input))
    _records_to_engine(records, engine)

    rankings = {p.name: engine.ranking(p.name) for p in config.parameterizations}
    alerts = []
    for rule in config.alert_rules:
        alerts.extend(check_alerts(rankings[rule.parameterization], [rule]))

    if args.state_out:
        Path(args.state_out).write_text(json.dumps(engine.state_dict()), "utf-8")

    if config.output == "structured":
        print(json.dumps({
            "rankings": {name: _ranking_rows(entries) for name, entries in rankings.items()},
            "alerts": [{"player": a.player, **_rule_to_dict(a.rule)} for a in alerts],
        }, ensure_ascii=False))
    else:
        _print_rankings_table(rankings, sys.stdout)
        _print_alerts_table(alerts, sys.stdout)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    sim = config.simulator
    seed = args.seed if args.seed is not None else sim.seed
    result = run_default_session(
        config.parameterizations,
        seed,
        players_per_class=sim.players_per_class,
        switch_at=sim.switch_at,
        actions_per_player=sim.actions_per_player,
        dots_per_color=sim.dots_per_color,
        bounds=sim.bounds,
    )
    Path(args.log).write_text(serialize_event_log(result.events), "utf-8")
    if config.output == "structured":
        print(json.dumps({
            "seed": seed,
            "events": len(result.events),
            "log": args.log,
            "final_quality": result.final_quality,
            "rankings": {n: _ranking_rows(e) for n, e in result.rankings.items()},
        }, ensure_ascii=False))
    else:
        print(f"wrote {len(result.events)} events to {args.log} (seed {seed})")
        print(f"final board quality: {result.final_quality:.3f}")
        print()
        _print_rankings_table(result.rankings, sys.stdout)
    return 0


def _print_replay_table(report: ReplayReport, out: TextIO) -> None:
    for name, score in report.scores.items():
        ratings = len(report.cqr_values[name])
        bad_ratings = sum(1 for m in report.cqr_mismatches if m[1] == name)
        bad_ranks = sum(1 for m in report.ranking_mismatches if m[0] == name)
        status = "ok" if not (bad_ratings or bad_ranks) else f"{bad_ratings + bad_ranks} mismatches"
        print(f"{name}: ratings {ratings - bad_ratings}/{ratings}, ranking {status}, score {score}", file=out)
    for note in report.published_deviations:
        print(f"note: {note}", file=out)
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict}: {report.cqr_checks - len(report.cqr_mismatches)}/{report.cqr_checks} ratings reproduced", file=out)
    for player, name, got, want in report.cqr_mismatches:
        print(f"  rating mismatch {player} {name}: got {got}, expected {want}", file=out)
    for name, rank, got, want in report.ranking_mismatches:
        print(f"  ranking mismatch {name} rank {rank}: got {got}, expected {want}", file=out)
    for name, got, want in report.score_mismatches:
        print(f"  score mismatch {name}: got {got}, expected {want}", file=out)


def cmd_replay_paper(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    matrix = None
    if args.matrix:
        matrix = ClassValueMatrix.from_dict(json.loads(Path(args.matrix).read_text("utf-8")))
    if args.export_log:
        records = load_paper_dataset().to_event_records()
        Path(args.export_log).write_text(serialize_event_log(records), "utf-8")
    report = replay_paper(matrix=matrix)
    if config.output == "structured":
        print(json.dumps({
            "passed": report.passed,
            "ratings_checked": report.cqr_checks,
            "ratings_mismatched": len(report.cqr_mismatches),
            "scores": report.scores,
            "rankings": {n: _ranking_rows(e) for n, e in report.rankings.items()},
            "published_deviations": report.published_deviations,
        }, ensure_ascii=False))
    else:
        _print_replay_table(report, sys.stdout)
    return 0 if report.passed else 2


def cmd_tune(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    if args.input:
        records = parse_event_log(_read_lines(args.input))
        histories: dict[str, list[float]] = {}
        for record in records:
            if record.action is not None:
                raise ValueError("tune consumes measured delta records")
            histories.setdefault(record.player, []).append(record.delta)
        classes = config.player_classes
    else:
        dataset = load_paper_dataset()
        histories = {p: list(v) for p, v in dataset.histories().items()}
        classes = dataset.classes()
    result = tune(config.parameterizations, histories, classes, config.class_values)
    if config.output == "structured":
        print(json.dumps({
            "best": result.best.name,
            "best_score": result.best_score,
            "scores": result.scores,
        }, ensure_ascii=False))
    else:
        for name, score in result.scores.items():
            print(f"{name}: {score}")
        print(f"best: {result.best.name} (score {result.best_score})")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    report = bench(args.players, args.events, config.parameterizations, rng=Random(args.seed))
    if config.output == "structured":
        print(json.dumps({
            "players": report.players,
            "events": report.events,
            "max_retained": report.max_retained,
            "total_retained": report.total_retained,
            "work_per_event": report.work_per_event,
        }, ensure_ascii=False))
    else:
        print(f"players={report.players} events={report.events}")
        for name, worst in report.max_retained.items():
            print(f"{name}: max retained entries per player = {worst}")
        print(f"total retained entries: {report.total_retained}")
        print(f"ledger mutations per event: {report.work_per_event:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqrank",
        description="Streaming contribution-quality ratings, rankings and alerts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", help="path to a JSON run configuration")
        sp.add_argument("--output", choices=("table", "structured"),
                        help="output format (overrides the config)")

    rank = sub.add_parser("rank", help="rank players from an event log")
    common(rank)
    rank.add_argument("--input", default="-", help="event log path, or - for stdin")
    rank.add_argument("--state-in", help="resume from an engine state snapshot")
    rank.add_argument("--state-out", help="write the engine state snapshot here")
    rank.set_defaults(func=cmd_rank)

    simulate = sub.add_parser("simulate", help="run a seeded clustering-game session")
    common(simulate)
    simulate.add_argument("--seed", type=int, default=None)
    simulate.add_argument("--log", default="events.jsonl", help="event log output path")
    simulate.set_defaults(func=cmd_simulate)

    replay = sub.add_parser("replay-paper", help="reproduce the embedded experiment tables")
    common(replay)
    replay.add_argument("--matrix", help="JSON file overriding the class-value matrix")
    replay.add_argument("--export-log", help="also write the dataset as an event log")
    replay.set_defaults(func=cmd_replay_paper)

    tune_cmd = sub.add_parser("tune", help="grid-search parameterizations on labeled data")
    common(tune_cmd)
    tune_cmd.add_argument("--input", help="labeled event log (defaults to the embedded dataset)")
    tune_cmd.set_defaults(func=cmd_tune)

    bench_cmd = sub.add_parser("bench", help="measure memory and per-event work")
    common(bench_cmd)
    bench_cmd.add_argument("--players", type=int, default=20)
    bench_cmd.add_argument("--events", type=int, default=100_000)
    bench_cmd.add_argument("--seed", type=int, default=0)
    bench_cmd.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
