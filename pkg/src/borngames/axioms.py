"""Executable axiom predicates and the replay of the two-branch derivation.

Each ``check_*`` function evaluates a valuation on the games an axiom
relates and returns a :class:`~borngames.core.CheckResult` carrying both
sides of the equation. A valuation that is undefined on one of those games
(a tie for ``maxabs``, a state missing from a table) yields ``Inapplicable``
with the error named in the note, never an exception.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import (
    ArityError,
    CheckResult,
    CoreError,
    Game,
    Inapplicable,
    RationalLike,
    State,
    as_rational,
    canonical_game,
    mk_observable,
    mk_state,
    negate_payoffs,
    shift_payoffs,
    shift_state,
    swap_payoffs,
)
from .valuations import BORN, Valuation, ValuationError, born_value, maxabs_valuation


class AxiomId(enum.Enum):
    ZERO_SUM = "ZeroSum"
    NAIVE_DISPLACEMENT = "NaiveDisplacement"
    PAYOFF_DISPLACEMENT = "PayoffDisplacement"
    EXCHANGE = "Exchange"
    PIVOTAL = "Pivotal"
    BORN_GENERAL = "BornGeneral"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, name: str) -> "AxiomId":
        try:
            return cls(name.strip())
        except ValueError:
            known = ", ".join(a.value for a in cls)
            raise ValueError(f"unknown axiom {name!r} (known: {known})") from None


class NonCanonicalGame(CoreError):
    pass


class UnequalWeights(CoreError):
    pass


class DerivationInconsistency(RuntimeError):
    """Displacement and zero-sum held but the swap relation did not."""


def _values(v: Valuation, *games: Game) -> tuple[Optional[list[Fraction]], str]:
    try:
        return [v(g) for g in games], ""
    except ValuationError as exc:
        return None, f"{type(exc).__name__}: {exc}"


def check_zero_sum(v: Valuation, game: Game) -> CheckResult:
    """v(g) + v(-g) = 0, reported as lhs = v(g), rhs = -v(-g)."""
    vals, err = _values(v, game, negate_payoffs(game))
    if vals is None:
        return CheckResult.inapplicable(err)
    return CheckResult.compare(vals[0], -vals[1], "v(g) = -v(-g)")


def check_payoff_displacement(v: Valuation, game: Game, k: RationalLike) -> CheckResult:
    k = as_rational(k)
    vals, err = _values(v, shift_payoffs(game, k), game)
    if vals is None:
        return CheckResult.inapplicable(err)
    return CheckResult.compare(vals[0], k + vals[1], f"v(g + {k}) = {k} + v(g)")


def check_naive_displacement(v: Valuation, game: Game, k: RationalLike) -> CheckResult:
    """Displacement read as moving the eigenstates themselves by ``k``.

    Only canonical games are meaningful here. When some ``x + k`` is not an
    eigenvalue, the shifted game cannot be posed and the result is
    ``Inapplicable``.
    """
    if not game.is_canonical:
        raise NonCanonicalGame(f"naive displacement needs canonical payoffs, got {game}")
    k = as_rational(k)
    shifted = shift_state(game, k)
    if isinstance(shifted, Inapplicable):
        return CheckResult.inapplicable(shifted.reason)
    vals, err = _values(v, shifted, game)
    if vals is None:
        return CheckResult.inapplicable(err)
    return CheckResult.compare(vals[0], k + vals[1], f"v(shift_state(g, {k})) = {k} + v(g)")


def check_exchange(v: Valuation, game: Game) -> CheckResult:
    if game.arity != 2:
        raise ArityError(f"exchange needs exactly two outcomes, game has {game.arity}")
    vals, err = _values(v, game, swap_payoffs(game))
    if vals is None:
        return CheckResult.inapplicable(err)
    return CheckResult.compare(vals[0], vals[1], "v(u1, u2) = v(u2, u1)")


def _require_equal_pair(state: State) -> tuple[Fraction, Fraction]:
    if len(state.support) != 2:
        raise ArityError(f"need a two-outcome state, {state} has {len(state.support)}")
    if not state.is_equal_weight:
        raise UnequalWeights(f"outcomes of {state} are not equally weighted")
    x1, x2 = state.support
    return x1, x2


def check_pivotal(v: Valuation, state: State) -> CheckResult:
    x1, x2 = _require_equal_pair(state)
    vals, err = _values(v, canonical_game(state))
    if vals is None:
        return CheckResult.inapplicable(err)
    return CheckResult.compare(vals[0], (x1 + x2) / 2, "v(canonical) = (x1 + x2)/2")


def check_born_general(v: Valuation, game: Game) -> CheckResult:
    vals, err = _values(v, game)
    if vals is None:
        return CheckResult.inapplicable(err)
    return CheckResult.compare(vals[0], born_value(game), "v(g) = born(g)")


@dataclass(frozen=True)
class DerivationReport:
    """Replay of the step from displacement and zero-sum to the swap relation.

    ``displacement_step`` checks v(g + k) = k + v(g) at k = -x1 - x2;
    ``zero_sum_step`` checks zero-sum on the swapped game, whose negation is
    the game paying x1 -> -x2, x2 -> -x1; ``swap_relation`` checks
    -v(swap g) = -x1 - x2 + v(g). ``pivotal`` is evaluated on its own.
    """

    valuation: str
    state: State
    k: Fraction
    displacement_step: CheckResult
    zero_sum_step: CheckResult
    swap_relation: CheckResult
    pivotal: CheckResult
    values: dict = field(default_factory=dict)


def replay_derivation(v: Valuation, state: State) -> DerivationReport:
    x1, x2 = _require_equal_pair(state)
    k = -x1 - x2
    g = canonical_game(state)
    shifted = shift_payoffs(g, k)
    swapped = swap_payoffs(g)

    values = {}
    for label, game in (("canonical", g), ("shifted", shifted), ("swapped", swapped)):
        vals, _ = _values(v, game)
        values[label] = None if vals is None else vals[0]

    displacement = check_payoff_displacement(v, g, k)
    zero_sum = check_zero_sum(v, swapped)
    if values["canonical"] is None or values["swapped"] is None:
        missing = "canonical" if values["canonical"] is None else "swapped"
        relation = CheckResult.inapplicable(f"valuation undefined on the {missing} game")
    else:
        relation = CheckResult.compare(
            -values["swapped"], k + values["canonical"], "-v(swap g) = -x1 - x2 + v(g)"
        )
    if displacement.holds and zero_sum.holds and not relation.holds:
        raise DerivationInconsistency(
            f"{v.descriptor} on {state}: premises hold but {relation} fails"
        )
    return DerivationReport(
        valuation=v.descriptor,
        state=state,
        k=k,
        displacement_step=displacement,
        zero_sum_step=zero_sum,
        swap_relation=relation,
        pivotal=check_pivotal(v, state),
        values=values,
    )


def default_k_grid(states: Iterable[State]) -> list[Fraction]:
    """All differences of supported eigenvalues, -x1 - x2 for pairs, and 0, +-1."""
    grid = {Fraction(0), Fraction(1), Fraction(-1)}
    for s in states:
        sup = s.support
        grid.update(a - b for a in sup for b in sup)
        if len(sup) == 2:
            grid.add(-sup[0] - sup[1])
    return sorted(grid)


@dataclass(frozen=True)
class Reproduction:
    """The worked two-branch counterexample, x1 = 1, x2 = 0, k = -1."""

    game: Game
    born_value: Fraction
    maxabs_value: Fraction
    born_pivotal: CheckResult
    maxabs_pivotal: CheckResult
    naive_missing: CheckResult
    naive_present: CheckResult
    payoff_displacement: CheckResult
    derivation: DerivationReport
    born_derivation: DerivationReport
    exchange: CheckResult
    swapped_value: Fraction


def worked_counterexample() -> Reproduction:
    maxabs = maxabs_valuation()
    narrow = mk_observable([0, 1])
    wide = mk_observable([-1, 0, 1])
    state = mk_state(narrow, {1: 1, 0: 1})
    g = canonical_game(state)
    g_wide = canonical_game(mk_state(wide, {1: 1, 0: 1}))
    k = Fraction(-1)
    return Reproduction(
        game=g,
        born_value=BORN(g),
        maxabs_value=maxabs(g),
        born_pivotal=check_pivotal(BORN, state),
        maxabs_pivotal=check_pivotal(maxabs, state),
        naive_missing=check_naive_displacement(maxabs, g, k),
        naive_present=check_naive_displacement(maxabs, g_wide, k),
        payoff_displacement=check_payoff_displacement(maxabs, g, k),
        derivation=replay_derivation(maxabs, state),
        born_derivation=replay_derivation(BORN, state),
        exchange=check_exchange(maxabs, g),
        swapped_value=maxabs(swap_payoffs(g)),
    )
