"""Serialization of results to JSON and Markdown.

Rationals are always written as exact strings (``"1/2"``). Markdown tables
add a decimal column labelled ``approx`` for reading convenience; JSON never
carries decimals. JSON is emitted with sorted keys so equal inputs give
byte-identical output.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .axioms import DerivationReport, Reproduction
from .core import CheckResult, Game, State
from .search import CheckRow, SearchOutcome

SCHEMA = "borngames.report"
SCHEMA_VERSION = 1


def q(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else str(x)


def approx(x: Optional[Fraction]) -> str:
    return "" if x is None else f"{float(x):.6g}"


def state_json(state: State) -> dict:
    return {
        "observable": [q(x) for x in state.observable.spectrum],
        "weights": [[q(x), q(w)] for x, w in state.normalized],
    }


def game_json(game: Game) -> dict:
    out = state_json(game.state)
    out["payoff"] = [[q(x), q(u)] for x, u in game.payoff]
    return out


def check_json(result: CheckResult) -> dict:
    return {
        "status": result.status.value,
        "lhs": q(result.lhs),
        "rhs": q(result.rhs),
        "note": result.note,
    }


def derivation_json(report: DerivationReport) -> dict:
    return {
        "valuation": report.valuation,
        "state": state_json(report.state),
        "k": q(report.k),
        "displacement_step": check_json(report.displacement_step),
        "zero_sum_step": check_json(report.zero_sum_step),
        "swap_relation": check_json(report.swap_relation),
        "pivotal": check_json(report.pivotal),
        "values": {label: q(v) for label, v in report.values.items()},
    }


def reproduction_json(rep: Reproduction) -> dict:
    return {
        "pivotal": {
            "game": game_json(rep.game),
            "born_value": q(rep.born_value),
            "maxabs_value": q(rep.maxabs_value),
            "born": check_json(rep.born_pivotal),
            "maxabs": check_json(rep.maxabs_pivotal),
        },
        "naive_displacement": {
            "k": "-1",
            "observable_0_1": check_json(rep.naive_missing),
            "observable_-1_0_1": check_json(rep.naive_present),
        },
        "payoff_displacement": check_json(rep.payoff_displacement),
        "derivation": derivation_json(rep.derivation),
        "born_derivation": derivation_json(rep.born_derivation),
        "exchange": {
            "check": check_json(rep.exchange),
            "canonical_value": q(rep.maxabs_value),
            "swapped_value": q(rep.swapped_value),
        },
    }


def row_json(row: CheckRow) -> dict:
    return {
        "axiom": row.axiom.value,
        "game": game_json(row.game),
        "k": q(row.k),
        "result": check_json(row.result),
    }


def search_json(out: SearchOutcome) -> dict:
    return {
        "family": out.family,
        "axioms": [a.value for a in out.axioms],
        "universe_size": out.universe_size,
        "total_candidates": out.total_candidates,
        "survivors": out.survivors,
        "born_agreeing_survivors": out.born_agreeing_survivors,
        "born_forced": out.born_forced,
        "survivor_descriptors": list(out.survivor_descriptors),
        "witnesses": [
            {
                "valuation": w.valuation,
                "game": game_json(w.game),
                "value": q(w.value),
                "born_value": q(w.born),
                "note": w.note,
            }
            for w in out.witnesses
        ],
    }


def dumps(command: str, result) -> str:
    envelope = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": result,
    }
    return json.dumps(envelope, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- markdown -----------------------------------------------------------------


def _table(header, rows) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join("" if c is None else str(c) for c in r) + " |" for r in rows]
    return lines


def _check_cells(result: CheckResult) -> list:
    return [result.status.value, q(result.lhs) or "", q(result.rhs) or "",
            approx(result.lhs), approx(result.rhs), result.note]


CHECK_HEADER = ["status", "lhs", "rhs", "lhs approx", "rhs approx", "note"]


def derivation_md(rep: DerivationReport) -> list[str]:
    lines = [f"valuation `{rep.valuation}` on state `{rep.state}`, k = {rep.k}", ""]
    rows = [
        ["displacement step", *_check_cells(rep.displacement_step)],
        ["zero-sum step", *_check_cells(rep.zero_sum_step)],
        ["swap relation", *_check_cells(rep.swap_relation)],
        ["pivotal", *_check_cells(rep.pivotal)],
    ]
    lines += _table(["entry", *CHECK_HEADER], rows)
    lines += ["", *_table(["game", "value", "approx"],
                          [[k, q(v) or "undefined", approx(v)] for k, v in rep.values.items()])]
    return lines


def reproduction_md(rep: Reproduction) -> str:
    lines = ["# Worked two-branch counterexample (x1 = 1, x2 = 0, k = -1)", ""]
    lines += ["## Pivotal value", "", f"game: `{rep.game}`", ""]
    lines += _table(["valuation", "value", "approx"], [
        ["born", q(rep.born_value), approx(rep.born_value)],
        ["maxabs", q(rep.maxabs_value), approx(rep.maxabs_value)],
    ])
    lines += [""]
    lines += _table(["pivotal check", *CHECK_HEADER], [
        ["born", *_check_cells(rep.born_pivotal)],
        ["maxabs", *_check_cells(rep.maxabs_pivotal)],
    ])
    lines += ["", "## Naive displacement (eigenvalues shifted by k), maxabs", ""]
    lines += _table(["observable", *CHECK_HEADER], [
        ["{0, 1}", *_check_cells(rep.naive_missing)],
        ["{-1, 0, 1}", *_check_cells(rep.naive_present)],
    ])
    lines += ["", "## Payoff displacement (payoffs shifted by k), maxabs", ""]
    lines += _table(CHECK_HEADER, [_check_cells(rep.payoff_displacement)])
    lines += ["", "## Derivation replay, maxabs", ""]
    lines += derivation_md(rep.derivation)
    lines += ["", "## Derivation replay, born", ""]
    lines += derivation_md(rep.born_derivation)
    lines += ["", "## Exchange, maxabs", ""]
    lines += _table(["game", "value", "approx"], [
        ["canonical", q(rep.maxabs_value), approx(rep.maxabs_value)],
        ["swapped", q(rep.swapped_value), approx(rep.swapped_value)],
    ])
    lines += [""]
    lines += _table(CHECK_HEADER, [_check_cells(rep.exchange)])
    return "\n".join(lines) + "\n"


def rows_md(valuation: str, rows: list[CheckRow]) -> str:
    counts = {s: 0 for s in ("Holds", "Violated", "Inapplicable")}
    for r in rows:
        counts[r.result.status.value] += 1
    lines = [f"# Axiom checks for `{valuation}`", ""]
    lines += [", ".join(f"{k}: {v}" for k, v in counts.items()), ""]
    lines += _table(["axiom", "game", "k", *CHECK_HEADER], [
        [r.axiom.value, f"`{r.game}`", q(r.k) or "", *_check_cells(r.result)] for r in rows
    ])
    return "\n".join(lines) + "\n"


def search_md(out: SearchOutcome) -> str:
    lines = [f"# Search over `{out.family}`", ""]
    lines += [
        f"- axioms: {', '.join(a.value for a in out.axioms)}",
        f"- universe size: {out.universe_size}",
        f"- candidates: {out.total_candidates}",
        f"- survivors: {out.survivors}",
        f"- Born-agreeing survivors: {out.born_agreeing_survivors}",
        f"- born_forced: {'true' if out.born_forced else 'false'}",
    ]
    if out.survivor_descriptors:
        lines += ["", "## Survivors", ""]
        lines += [f"- `{d}`" for d in out.survivor_descriptors]
    if out.witnesses:
        lines += ["", "## Witnesses", ""]
        lines += _table(["valuation", "game", "value", "born", "value approx", "born approx"], [
            [f"`{w.valuation}`", f"`{w.game}`", q(w.value) or w.note, q(w.born),
             approx(w.value), approx(w.born)]
            for w in out.witnesses
        ])
    return "\n".join(lines) + "\n"


def eval_md(valuation: str, game: Game, value: Fraction, born: Fraction) -> str:
    return "\n".join([
        "# Evaluation",
        "",
        f"- valuation: {valuation}",
        f"- game: `{game}`",
        f"- value: {value}",
        f"- born_value: {born}",
        f"- value approx: {approx(value)}",
    ]) + "\n"
