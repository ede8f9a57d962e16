"""Brute-force independence analysis over finite game universes.

A universe is built from a handful of states: their canonical games, shifted
by every k on a grid, then closed under negation and (for two-outcome games)
payoff swap. Negation and swap commute and are involutions, so that closure
is finite. A family of valuations is then filtered by a set of axioms, each
checked at every instance whose games all lie in the universe, and the
survivors are compared with the Born rule on the equal-weight canonical
games.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .axioms import (
    AxiomId,
    check_born_general,
    check_exchange,
    check_naive_displacement,
    check_payoff_displacement,
    check_pivotal,
    check_zero_sum,
    default_k_grid,
)
from .core import (
    CheckResult,
    CoreError,
    Game,
    Inapplicable,
    Observable,
    RationalLike,
    State,
    as_rational,
    canonical_game,
    negate_payoffs,
    shift_payoffs,
    shift_state,
    swap_payoffs,
)
from .valuations import (
    ConvexWeightValuation,
    Selector,
    SelectorValuation,
    Valuation,
    ValuationError,
    born_value,
)

DEFAULT_CAP = 10**6
DEFAULT_WITNESS_CAP = 10


class SearchError(Exception):
    pass


class UniverseTooLarge(SearchError):
    pass


class EmptyAxiomSet(SearchError):
    pass


class InapplicableAxiom(SearchError):
    pass


@dataclass(frozen=True)
class GameUniverse:
    observable: Observable
    states: tuple[State, ...]
    k_grid: tuple[Fraction, ...]
    closure: tuple[Game, ...]

    def __contains__(self, game) -> bool:
        return game in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.closure)

    @property
    def size(self) -> int:
        return len(self.closure)

    @property
    def pivotal_states(self) -> tuple[State, ...]:
        return tuple(s for s in self.states if len(s.support) == 2 and s.is_equal_weight)

    @property
    def probe_games(self) -> tuple[Game, ...]:
        return tuple(canonical_game(s) for s in self.states if s.is_equal_weight)


def _orbit(game: Game) -> list[Game]:
    out = [game, negate_payoffs(game)]
    if game.arity == 2:
        swapped = swap_payoffs(game)
        out += [swapped, negate_payoffs(swapped)]
    return out


def build_universe(
    observable: Observable,
    states: Iterable[State],
    k_grid: Optional[Iterable[RationalLike]] = None,
    cap: int = DEFAULT_CAP,
) -> GameUniverse:
    states = sorted(set(states), key=lambda s: s.sort_key)
    for s in states:
        if s.observable != observable:
            raise CoreError(f"state {s} lives on {s.observable}, not {observable}")
    if k_grid is None:
        grid = default_k_grid(states)
    else:
        grid = sorted({as_rational(k) for k in k_grid})

    closure: set[Game] = set()
    for s in states:
        base = canonical_game(s)
        for k in [Fraction(0), *grid]:
            closure.update(_orbit(shift_payoffs(base, k)))
            if len(closure) > cap:
                raise UniverseTooLarge(f"closure exceeds {cap} games")
    ordered = tuple(sorted(closure, key=lambda g: g.sort_key))
    return GameUniverse(observable, tuple(states), tuple(grid), ordered)


@dataclass(frozen=True)
class CheckRow:
    axiom: AxiomId
    game: Game
    k: Optional[Fraction]
    result: CheckResult


def required_games(universe: GameUniverse, axiom: AxiomId):
    """Yield ``(game, k)`` instances of ``axiom`` that stay inside the universe."""
    if axiom in (AxiomId.ZERO_SUM, AxiomId.BORN_GENERAL):
        for g in universe.closure:
            yield g, None
    elif axiom is AxiomId.EXCHANGE:
        # exchange only constrains equally weighted outcomes
        for g in universe.closure:
            if g.arity == 2 and g.state.is_equal_weight:
                yield g, None
    elif axiom is AxiomId.PAYOFF_DISPLACEMENT:
        for g in universe.closure:
            for k in universe.k_grid:
                if shift_payoffs(g, k) in universe:
                    yield g, k
    elif axiom is AxiomId.NAIVE_DISPLACEMENT:
        for s in universe.states:
            g = canonical_game(s)
            for k in universe.k_grid:
                moved = shift_state(g, k)
                # a shifted state that exists but lies outside the universe is skipped
                if isinstance(moved, Inapplicable) or moved in universe:
                    yield g, k
    elif axiom is AxiomId.PIVOTAL:
        for s in universe.pivotal_states:
            yield canonical_game(s), None
    else:  # pragma: no cover
        raise ValueError(axiom)


def _check(v: Valuation, axiom: AxiomId, game: Game, k) -> CheckResult:
    if axiom is AxiomId.ZERO_SUM:
        return check_zero_sum(v, game)
    if axiom is AxiomId.PAYOFF_DISPLACEMENT:
        return check_payoff_displacement(v, game, k)
    if axiom is AxiomId.NAIVE_DISPLACEMENT:
        return check_naive_displacement(v, game, k)
    if axiom is AxiomId.EXCHANGE:
        return check_exchange(v, game)
    if axiom is AxiomId.PIVOTAL:
        return check_pivotal(v, game.state)
    return check_born_general(v, game)


def validate_axioms(universe: GameUniverse, axioms: Iterable[AxiomId]) -> tuple[AxiomId, ...]:
    axioms = tuple(sorted(set(axioms), key=lambda a: a.value))
    if not axioms:
        raise EmptyAxiomSet("at least one axiom is required")
    if AxiomId.PIVOTAL in axioms and not universe.pivotal_states:
        raise InapplicableAxiom("Pivotal needs an equal-weight two-outcome state")
    if AxiomId.EXCHANGE in axioms and not universe.pivotal_states:
        raise InapplicableAxiom("Exchange needs an equal-weight two-outcome state")
    return axioms


def check_universe(v: Valuation, universe: GameUniverse, axioms: Iterable[AxiomId],
                   stop_on_violation: bool = False) -> Iterator[CheckRow]:
    """Every instance of every axiom over the universe, in canonical order."""
    for axiom in validate_axioms(universe, axioms):
        for game, k in required_games(universe, axiom):
            row = CheckRow(axiom, game, k, _check(v, axiom, game, k))
            yield row
            if stop_on_violation and row.result.violated:
                return


def survives(v: Valuation, universe: GameUniverse, axioms: Iterable[AxiomId]) -> bool:
    return not any(r.result.violated for r in check_universe(v, universe, axioms, True))


@dataclass(frozen=True)
class Witness:
    valuation: str
    game: Game
    value: Optional[Fraction]
    born: Fraction
    note: str = ""


@dataclass(frozen=True)
class SearchOutcome:
    family: str
    axioms: tuple[AxiomId, ...]
    total_candidates: int
    survivors: int
    born_agreeing_survivors: int
    born_forced: bool
    witnesses: tuple[Witness, ...]
    survivor_descriptors: tuple[str, ...]
    universe_size: int


def _disagreement(v: Valuation, probes: Sequence[Game]) -> Optional[Witness]:
    for g in probes:
        born = born_value(g)
        try:
            value = v(g)
        except ValuationError as exc:
            return Witness(v.descriptor, g, None, born, f"{type(exc).__name__}: {exc}")
        if value != born:
            return Witness(v.descriptor, g, value, born)
    return None


def run_search(
    universe: GameUniverse,
    family: Iterable[Valuation],
    axioms: Iterable[AxiomId],
    *,
    family_name: str = "custom",
    witness_cap: Optional[int] = DEFAULT_WITNESS_CAP,
    workers: Optional[int] = None,
) -> SearchOutcome:
    """Filter ``family`` by ``axioms`` and decide whether survivors must be Born.

    Instances the valuation cannot be evaluated on, or games that cannot be
    posed on the observable, count as neither pass nor fail. ``witness_cap``
    of ``None`` keeps every witness and survivor descriptor. With ``workers``
    the candidates are filtered on a thread pool; results are merged in
    enumeration order, so the outcome does not depend on it.
    """
    axioms = validate_axioms(universe, axioms)
    probes = universe.probe_games

    def judge(v):
        if not survives(v, universe, axioms):
            return v.descriptor, False, None
        return v.descriptor, True, _disagreement(v, probes)

    if workers:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(judge, family))
    else:
        verdicts = map(judge, family)

    total = survivors = agreeing = 0
    witnesses: list[Witness] = []
    names: list[str] = []
    for descriptor, alive, witness in verdicts:
        total += 1
        if not alive:
            continue
        survivors += 1
        if witness_cap is None or len(names) < witness_cap:
            names.append(descriptor)
        if witness is None:
            agreeing += 1
        elif witness_cap is None or len(witnesses) < witness_cap:
            witnesses.append(witness)

    return SearchOutcome(
        family=family_name,
        axioms=axioms,
        total_candidates=total,
        survivors=survivors,
        born_agreeing_survivors=agreeing,
        born_forced=survivors > 0 and agreeing == survivors,
        witnesses=tuple(witnesses),
        survivor_descriptors=tuple(names),
        universe_size=universe.size,
    )


def enumerate_selectors(universe: GameUniverse) -> Iterator[SelectorValuation]:
    """Every choice of one supported eigenvalue per state, lexicographically."""
    states = universe.states
    for choice in itertools.product(*(s.support for s in states)):
        yield SelectorValuation(Selector.from_choices(dict(zip(states, choice))))


def farey(n: int) -> list[Fraction]:
    """The Farey sequence of order ``n``: reduced fractions in [0, 1], denominators <= n."""
    if n < 1:
        raise ValueError("Farey order must be >= 1")
    a, b, c, d = 0, 1, 1, n
    seq = [Fraction(0)]
    while c <= n:
        seq.append(Fraction(c, d))
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return seq


def weight_vectors(size: int, bound: int) -> list[tuple[Fraction, ...]]:
    """Probability vectors of length ``size`` with entries from ``farey(bound)``."""
    grid = farey(bound)
    allowed = set(grid)

    def fill(n, total):
        if n == 1:
            return [(total,)] if total in allowed else []
        out = []
        for a in grid:
            if a > total:
                break
            out.extend((a,) + rest for rest in fill(n - 1, total - a))
        return out

    return fill(size, Fraction(1))


def enumerate_weight_valuations(universe: GameUniverse, bound: int) -> Iterator[ConvexWeightValuation]:
    if bound < 1:
        raise ValueError("denominator bound must be >= 1")
    states = universe.states
    per_state = [weight_vectors(len(s.support), bound) for s in states]
    for combo in itertools.product(*per_state):
        yield ConvexWeightValuation(
            {s: dict(zip(s.support, q)) for s, q in zip(states, combo)}
        )
