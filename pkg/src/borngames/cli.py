"""Command line entry point.

Exit codes: 0 success (all checks hold or are inapplicable), 1 violation
found or golden mismatch, 2 configuration error, 3 valuation error,
4 universe larger than the configured cap.
"""
from __future__ import annotations

import argparse
import dataclasses
import difflib
import sys
from importlib import resources
from pathlib import Path

from . import axioms, report
from .config import FORMATS, ConfigError, load_config
from .search import SearchError, UniverseTooLarge, check_universe, run_search
from .valuations import ValuationError, born_value

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_VALUATION, EXIT_CAP = 0, 1, 2, 3, 4


def golden_text(fmt: str) -> str:
    name = "reproduce.json" if fmt == "json" else "reproduce.md"
    return resources.files("borngames").joinpath("golden", name).read_text(encoding="utf-8")


def render_reproduction(fmt: str) -> str:
    rep = axioms.worked_counterexample()
    if fmt == "json":
        return report.dumps("reproduce", report.reproduction_json(rep))
    return report.reproduction_md(rep)


def _emit(text: str, args) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)


def _error(args, command: str, kind: str, message: str, code: int) -> int:
    if (args.format or "markdown") == "json":
        _emit(report.dumps(command, {"error": kind, "message": message}), args)
    else:
        _emit(f"# {command} failed\n\n- error: {kind}\n- message: {message}\n", args)
    print(f"error: {kind}: {message}", file=sys.stderr)
    return code


def _load(args):
    cfg = load_config(args.config)
    if args.format is None:
        args.format = cfg.format
    if args.witness_cap is None:
        args.witness_cap = cfg.witness_cap
    return cfg


def cmd_eval(args) -> int:
    cfg = _load(args)
    if args.game is not None:
        cfg = dataclasses.replace(cfg, game_index=args.game)
    v = cfg.single_valuation()
    game = cfg.game()
    try:
        value = v(game)
    except ValuationError as exc:
        return _error(args, "eval", type(exc).__name__, str(exc), EXIT_VALUATION)
    born = born_value(game)
    if args.format == "json":
        _emit(report.dumps("eval", {
            "valuation": v.descriptor,
            "game": report.game_json(game),
            "value": report.q(value),
            "born_value": report.q(born),
        }), args)
    else:
        _emit(report.eval_md(v.descriptor, game, value, born), args)
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _load(args)
    v = cfg.single_valuation()
    rows = list(check_universe(v, cfg.universe(), cfg.axioms))
    if args.format == "json":
        counts = {s: 0 for s in ("Holds", "Violated", "Inapplicable")}
        for r in rows:
            counts[r.result.status.value] += 1
        _emit(report.dumps("check", {
            "valuation": v.descriptor,
            "counts": counts,
            "rows": [report.row_json(r) for r in rows],
        }), args)
    else:
        _emit(report.rows_md(v.descriptor, rows), args)
    return EXIT_VIOLATION if any(r.result.violated for r in rows) else EXIT_OK


def cmd_reproduce(args) -> int:
    fmt = args.format or "markdown"
    text = render_reproduction(fmt)
    _emit(text, args)
    expected = Path(args.golden).read_text(encoding="utf-8") if args.golden else golden_text(fmt)
    if text == expected:
        return EXIT_OK
    diff = difflib.unified_diff(
        expected.splitlines(keepends=True), text.splitlines(keepends=True), "golden", "emitted"
    )
    sys.stderr.write("reproduction differs from golden report:\n")
    sys.stderr.writelines(diff)
    return EXIT_VIOLATION


def cmd_search(args) -> int:
    cfg = _load(args)
    universe = cfg.universe()
    name, family = cfg.family(universe)
    cap = None if args.all_witnesses else args.witness_cap
    outcome = run_search(universe, family, cfg.axioms, family_name=name,
                         witness_cap=cap, workers=args.workers)
    if args.format == "json":
        _emit(report.dumps("search", report.search_json(outcome)), args)
    else:
        _emit(report.search_md(outcome), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borngames",
        description="Exact checks of decision-theoretic axioms on quantum measurement games.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", help="also write the report to this path")
    common.add_argument("--witness-cap", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="value of one game")
    p.add_argument("--config", required=True)
    p.add_argument("--game", type=int, default=None, help="index of the state in the config")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common], help="check axioms over a universe")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reproduce", parents=[common], help="replay the worked counterexample")
    p.add_argument("--golden", help="compare against this file instead of the bundled one")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("search", parents=[common], help="axiom independence search")
    p.add_argument("--config", required=True)
    p.add_argument("--all-witnesses", action="store_true", help="do not cap witnesses")
    p.add_argument("--workers", type=int, default=None, help="filter candidates on N threads")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _error(args, args.command, "ConfigError", str(exc), EXIT_CONFIG)
    except UniverseTooLarge as exc:
        return _error(args, args.command, "UniverseTooLarge", str(exc), EXIT_CAP)
    except SearchError as exc:
        return _error(args, args.command, type(exc).__name__, str(exc), EXIT_CONFIG)


if __name__ == "__main__":
    sys.exit(main())
