"""Run configuration: a small line-oriented ``key = value`` format.

Example::

    # the two-branch universe with x1 = 1, x2 = 0
    observable = 0, 1
    state = 0:1, 1:1
    k_grid = -1, 0, 1
    valuation = maxabs
    axioms = ZeroSum, PayoffDisplacement

Blank lines and ``#`` comments are ignored. ``state`` may repeat; every other
key may appear once. Numbers are exact: integers, fractions such as ``-3/4``
or finite decimals such as ``0.25``. See ``docs/config.md`` for the full
grammar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from .axioms import AxiomId
from .core import (
    CoreError,
    Game,
    Observable,
    State,
    as_rational,
    canonical_game,
    mk_game,
    mk_observable,
    mk_state,
)
from .search import DEFAULT_CAP, DEFAULT_WITNESS_CAP, GameUniverse, build_universe
from .search import enumerate_selectors, enumerate_weight_valuations
from .valuations import BORN, Valuation, maxabs_valuation

KEYS = {
    "observable", "state", "k_grid", "valuation", "axioms", "format",
    "witness_cap", "cap", "game", "payoffs",
}
FORMATS = ("markdown", "json")
_WEIGHTS = re.compile(r"weights\(\s*(\d+)\s*\)$")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    observable: Observable
    states: tuple[State, ...]
    k_grid: Optional[tuple[Fraction, ...]] = None
    valuation: str = "born"
    bound: Optional[int] = None
    axioms: tuple[AxiomId, ...] = ()
    format: str = "markdown"
    witness_cap: int = DEFAULT_WITNESS_CAP
    cap: int = DEFAULT_CAP
    game_index: int = 0
    payoffs: Optional[tuple[tuple[Fraction, Fraction], ...]] = None

    def universe(self) -> GameUniverse:
        return build_universe(self.observable, self.states, self.k_grid, cap=self.cap)

    def single_valuation(self) -> Valuation:
        if self.valuation == "born":
            return BORN
        if self.valuation == "maxabs":
            return maxabs_valuation()
        raise ConfigError(f"valuation {self.valuation!r} is a family; use born or maxabs")

    def family(self, universe: GameUniverse) -> tuple[str, Iterable[Valuation]]:
        if self.valuation == "selectors":
            return "selectors", enumerate_selectors(universe)
        if self.valuation == "weights":
            return f"weights({self.bound})", enumerate_weight_valuations(universe, self.bound)
        return self.valuation, [self.single_valuation()]

    def game(self) -> Game:
        if not 0 <= self.game_index < len(self.states):
            raise ConfigError(f"game index {self.game_index} out of range")
        state = self.states[self.game_index]
        if self.payoffs is None:
            return canonical_game(state)
        try:
            return mk_game(state, dict(self.payoffs))
        except CoreError as exc:
            raise ConfigError(str(exc)) from exc


def _rationals(text: str, key: str) -> list[Fraction]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return [as_rational(t) for t in items]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _pairs(text: str, key: str) -> list[tuple[Fraction, Fraction]]:
    out = []
    for item in (t.strip() for t in text.split(",")):
        if not item:
            continue
        if item.count(":") != 1:
            raise ConfigError(f"{key}: expected 'eigenvalue:number', got {item!r}")
        a, b = item.split(":")
        try:
            out.append((as_rational(a), as_rational(b)))
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{key}: {exc}") from exc
    return out


def _int(text: str, key: str, minimum: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None
    if value < minimum:
        raise ConfigError(f"{key}: must be >= {minimum}")
    return value


def parse_config(text: str) -> RunConfig:
    raw: dict[str, object] = {}
    state_lines: list[str] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key == "state":
            state_lines.append(value)
            continue
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    if "observable" not in raw:
        raise ConfigError("missing required key 'observable'")
    if not state_lines:
        raise ConfigError("at least one 'state' line is required")
    try:
        observable = mk_observable(_rationals(raw["observable"], "observable"))
        states = tuple(mk_state(observable, dict(_pairs(s, "state"))) for s in state_lines)
    except CoreError as exc:
        raise ConfigError(f"{type(exc).__name__}: {exc}") from exc

    kwargs: dict = {}
    if "k_grid" in raw and raw["k_grid"] != "default":
        kwargs["k_grid"] = tuple(_rationals(raw["k_grid"], "k_grid"))

    valuation = raw.get("valuation", "born")
    match = _WEIGHTS.match(valuation)
    if match:
        kwargs["valuation"] = "weights"
        kwargs["bound"] = int(match.group(1))
        if kwargs["bound"] < 1:
            raise ConfigError("weights(bound) needs bound >= 1")
    elif valuation in ("born", "maxabs", "selectors"):
        kwargs["valuation"] = valuation
    else:
        raise ConfigError(f"unknown valuation {valuation!r}")

    if "axioms" in raw:
        try:
            kwargs["axioms"] = tuple(
                AxiomId.parse(a) for a in raw["axioms"].split(",") if a.strip()
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if "format" in raw:
        if raw["format"] not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        kwargs["format"] = raw["format"]
    if "witness_cap" in raw:
        kwargs["witness_cap"] = _int(raw["witness_cap"], "witness_cap", 0)
    if "cap" in raw:
        kwargs["cap"] = _int(raw["cap"], "cap", 1)
    if "game" in raw:
        kwargs["game_index"] = _int(raw["game"], "game", 0)
    if "payoffs" in raw:
        kwargs["payoffs"] = tuple(_pairs(raw["payoffs"], "payoffs"))
    return RunConfig(observable, states, **kwargs)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(text)
