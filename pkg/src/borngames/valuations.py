"""Value functionals on measurement games.

A valuation maps a :class:`~borngames.core.Game` to an exact rational, the
amount a decision maker would pay to play. Four kinds are provided:

* :class:`BornValuation`, the weight-normalized expectation of the payoffs;
* :class:`SelectorValuation`, which treats the outcome as determinate and pays
  the payoff of one chosen outcome per state;
* :class:`ConvexWeightValuation`, an arbitrary probability vector per state;
* :class:`TableValuation`, an explicit finite game-to-value table.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Optional

from .core import Game, RationalLike, State, as_rational


class ValuationError(Exception):
    """A valuation is undefined on the game it was asked about."""


class TieUndefined(ValuationError):
    pass


class SelectorUndefined(ValuationError):
    pass


class WeightDomainMismatch(ValuationError):
    pass


class WeightsNotNormalized(ValuationError):
    pass


class NotInTable(ValuationError):
    pass


def born_value(game: Game) -> Fraction:
    # normalized weights already sum to one
    return sum((w * game.payoff_of(x) for x, w in game.state.normalized), Fraction(0))


class Selector:
    """A (possibly partial) choice of one outcome per state.

    ``rule`` sees only the state. It may raise :class:`ValuationError` where
    it is undefined; a choice outside the support is rejected here.
    """

    def __init__(self, rule: Callable[[State], Fraction], descriptor: str,
                 choices: Optional[Mapping[State, Fraction]] = None):
        self.rule = rule
        self.descriptor = descriptor
        self.choices = choices

    def __call__(self, state: State) -> Fraction:
        r = self.rule(state)
        if r not in state.support:
            raise SelectorUndefined(
                f"{self.descriptor} chose {r}, outside the support of {state}"
            )
        return r

    @classmethod
    def from_choices(cls, choices: Mapping[State, Fraction], descriptor: Optional[str] = None):
        table = dict(choices)

        def rule(state):
            try:
                return table[state]
            except KeyError:
                raise SelectorUndefined(f"no choice recorded for state {state}") from None

        if descriptor is None:
            ordered = sorted(table.items(), key=lambda kv: kv[0].sort_key)
            descriptor = "selector(" + ", ".join(f"{s}->{x}" for s, x in ordered) + ")"
        return cls(rule, descriptor, table)

    def __repr__(self):
        return f"Selector({self.descriptor})"


def _maxabs_rule(state: State) -> Fraction:
    support = state.support
    top = max(abs(x) for x in support)
    winners = [x for x in support if abs(x) == top]
    if len(winners) > 1:
        raise TieUndefined(
            f"eigenvalues {', '.join(map(str, winners))} share the largest |x| in {state}"
        )
    return winners[0]


def maxabs_selector() -> Selector:
    """Pick the supported eigenvalue of strictly largest absolute value."""
    return Selector(_maxabs_rule, "maxabs")


def selector_value(selector: Selector, game: Game) -> Fraction:
    return game.payoff_of(selector(game.state))


def convex_weight_value(weights: Mapping[RationalLike, RationalLike], game: Game) -> Fraction:
    q = {as_rational(x): as_rational(w) for x, w in weights.items()}
    if set(q) != set(game.state.support):
        raise WeightDomainMismatch(
            f"weights keyed by {sorted(map(str, q))}, support is "
            f"{list(map(str, game.state.support))}"
        )
    if any(w < 0 for w in q.values()) or sum(q.values()) != 1:
        raise WeightsNotNormalized(f"weights {sorted(q.items())} are not a probability vector")
    return sum((q[x] * u for x, u in game.payoff), Fraction(0))


class Valuation:
    """Base class; subclasses implement :meth:`value`."""

    descriptor = "valuation"

    def value(self, game: Game) -> Fraction:
        raise NotImplementedError

    def __call__(self, game: Game) -> Fraction:
        return self.value(game)

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor})"


class BornValuation(Valuation):
    descriptor = "born"

    def value(self, game):
        return born_value(game)


class SelectorValuation(Valuation):
    def __init__(self, selector: Selector):
        self.selector = selector
        self.descriptor = selector.descriptor

    def value(self, game):
        return selector_value(self.selector, game)


class ConvexWeightValuation(Valuation):
    """Per-state probability vectors, ``{state: {eigenvalue: q}}``."""

    def __init__(self, weights: Mapping[State, Mapping[RationalLike, RationalLike]],
                 descriptor: Optional[str] = None):
        self.weights = {
            state: {as_rational(x): as_rational(w) for x, w in q.items()}
            for state, q in weights.items()
        }
        if descriptor is None:
            ordered = sorted(self.weights.items(), key=lambda kv: kv[0].sort_key)
            descriptor = "weights(" + "; ".join(
                f"{s}->(" + ", ".join(str(q[x]) for x in sorted(q)) + ")"
                for s, q in ordered
            ) + ")"
        self.descriptor = descriptor

    def value(self, game):
        try:
            q = self.weights[game.state]
        except KeyError:
            raise WeightDomainMismatch(f"no weight vector for state {game.state}") from None
        return convex_weight_value(q, game)


def born_weights(states) -> ConvexWeightValuation:
    """Born rule on ``states`` written as a convex-weight valuation."""
    return ConvexWeightValuation({s: s.weights for s in states}, descriptor="born-weights")


class TableValuation(Valuation):
    def __init__(self, table: Mapping[Game, RationalLike], descriptor: str = "table"):
        self.table = {g: as_rational(v) for g, v in table.items()}
        self.descriptor = descriptor

    def value(self, game):
        try:
            return self.table[game]
        except KeyError:
            raise NotInTable(f"game {game} is not tabulated") from None


BORN = BornValuation()


def maxabs_valuation() -> SelectorValuation:
    return SelectorValuation(maxabs_selector())
