"""Exact-rational observables, states and measurement games.

Everything here is immutable. States are stored at the level of squared
amplitude moduli (Born weights), so the equal-amplitude superposition of two
eigenstates is simply the weight map ``{x1: 1, x2: 1}``. Two states are equal
when their normalized weights agree, which makes states rays rather than
vectors.

A game is a state together with a payoff for every eigenvalue the state
supports. The transformations the decision-theoretic axioms quantify over
(payoff shift, negation, swap and the eigenvalue shift) live here too.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


class CoreError(ValueError):
    """Base class for malformed observables, states and games."""


class EmptySpectrum(CoreError):
    pass


class DuplicateEigenvalue(CoreError):
    pass


class UnknownEigenvalue(CoreError):
    pass


class NegativeWeight(CoreError):
    pass


class ZeroState(CoreError):
    pass


class PayoffDomainError(CoreError):
    """Payoff keys differ from the support of the state."""


class ArityError(CoreError):
    """An operation needs a different number of supported outcomes."""


def as_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to a Fraction without any floating point rounding.

    Strings may be integers, fractions (``"-3/4"``) or decimals (``"0.25"``).
    Floats are refused since most of them are not the number the user typed.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; use int, str or Fraction")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fmt_rational(value: Fraction) -> str:
    """``1/2``, ``-1``, ``0``: the exact string form used in every report."""
    return str(value)


@dataclass(frozen=True)
class Observable:
    spectrum: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.spectrum:
            raise EmptySpectrum("an observable needs at least one eigenvalue")
        for a, b in zip(self.spectrum, self.spectrum[1:]):
            if a == b:
                raise DuplicateEigenvalue(f"eigenvalue {a} listed twice")
            if a > b:
                raise CoreError("spectrum must be sorted ascending")

    def __contains__(self, x) -> bool:
        return x in self.spectrum

    def __str__(self):
        return "{" + ", ".join(map(fmt_rational, self.spectrum)) + "}"


def mk_observable(eigenvalues: Iterable[RationalLike]) -> Observable:
    values = [as_rational(x) for x in eigenvalues]
    if not values:
        raise EmptySpectrum("an observable needs at least one eigenvalue")
    if len(set(values)) != len(values):
        dup = next(x for x in values if values.count(x) > 1)
        raise DuplicateEigenvalue(f"eigenvalue {dup} listed twice")
    return Observable(tuple(sorted(values)))


@dataclass(frozen=True)
class State:
    """Born weights over part of an observable's spectrum.

    ``normalized`` holds ``(eigenvalue, weight)`` pairs for the support only,
    ascending by eigenvalue, with weights summing to one. Equality and hashing
    use ``observable`` and ``normalized``; the weights as given are kept in
    ``raw`` for display only.
    """

    observable: Observable
    normalized: tuple[tuple[Fraction, Fraction], ...]
    raw: tuple[tuple[Fraction, Fraction], ...] = field(compare=False, default=())

    @property
    def support(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.normalized)

    @property
    def weights(self) -> dict[Fraction, Fraction]:
        return dict(self.normalized)

    def weight(self, x) -> Fraction:
        return self.weights.get(x, Fraction(0))

    @property
    def is_equal_weight(self) -> bool:
        return len({w for _, w in self.normalized}) == 1

    @property
    def sort_key(self):
        return (self.observable.spectrum, self.normalized)

    def __str__(self):
        return "[" + ", ".join(f"{x}:{w}" for x, w in self.normalized) + "]"


def mk_state(observable: Observable, weights: Mapping[RationalLike, RationalLike]) -> State:
    parsed: dict[Fraction, Fraction] = {}
    for key, w in weights.items():
        x, w = as_rational(key), as_rational(w)
        if x not in observable:
            raise UnknownEigenvalue(f"{x} is not in the spectrum {observable}")
        if x in parsed:
            raise DuplicateEigenvalue(f"weight for {x} given twice")
        if w < 0:
            raise NegativeWeight(f"weight {w} on eigenvalue {x}")
        parsed[x] = w
    total = sum(parsed.values(), Fraction(0))
    if total == 0:
        raise ZeroState("at least one weight must be positive")
    normalized = tuple((x, parsed[x] / total) for x in sorted(parsed) if parsed[x] > 0)
    raw = tuple((x, parsed[x]) for x in sorted(parsed))
    return State(observable, normalized, raw)


@dataclass(frozen=True)
class Game:
    """A state plus a utility for each supported outcome."""

    state: State
    payoff: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        keys = tuple(x for x, _ in self.payoff)
        if keys != self.state.support:
            raise PayoffDomainError(
                f"payoffs keyed by {list(map(str, keys))}, "
                f"support is {list(map(str, self.state.support))}"
            )

    @property
    def payoffs(self) -> dict[Fraction, Fraction]:
        return dict(self.payoff)

    def payoff_of(self, x) -> Fraction:
        return self.payoffs[x]

    @property
    def arity(self) -> int:
        return len(self.payoff)

    @property
    def is_canonical(self) -> bool:
        return all(x == u for x, u in self.payoff)

    @property
    def sort_key(self):
        return (self.state.sort_key, self.payoff)

    def __str__(self):
        pays = ", ".join(f"{x}->{u}" for x, u in self.payoff)
        return f"{self.state} {{{pays}}}"


def mk_game(state: State, payoff: Mapping[RationalLike, RationalLike]) -> Game:
    parsed = {as_rational(x): as_rational(u) for x, u in payoff.items()}
    return Game(state, tuple(sorted(parsed.items())))


def canonical_game(state: State) -> Game:
    """The game that pays the measured eigenvalue itself."""
    return Game(state, tuple((x, x) for x in state.support))


def shift_payoffs(game: Game, k: RationalLike) -> Game:
    k = as_rational(k)
    return Game(game.state, tuple((x, u + k) for x, u in game.payoff))


def negate_payoffs(game: Game) -> Game:
    return Game(game.state, tuple((x, -u) for x, u in game.payoff))


def swap_payoffs(game: Game) -> Game:
    """Exchange the two payoffs of a two-outcome game."""
    if game.arity != 2:
        raise ArityError(f"swap needs exactly two outcomes, game has {game.arity}")
    (x1, u1), (x2, u2) = game.payoff
    return Game(game.state, ((x1, u2), (x2, u1)))


@dataclass(frozen=True)
class Inapplicable:
    """Marker for a game that cannot be posed on the given observable."""

    missing: Fraction
    reason: str


def shift_state(game: Game, k: RationalLike) -> Union[Game, Inapplicable]:
    """Move every supported branch from ``x`` to ``x + k`` on the same observable.

    The result carries canonical payoffs. If some ``x + k`` is not an
    eigenvalue, the shifted state does not exist and an :class:`Inapplicable`
    naming the first (lowest) missing eigenvalue is returned instead.
    """
    k = as_rational(k)
    obs = game.state.observable
    for x in game.state.support:
        if x + k not in obs:
            return Inapplicable(
                x + k, f"eigenvalue {x + k} is not in the spectrum {obs}"
            )
    moved = State(obs, tuple((x + k, w) for x, w in game.state.normalized))
    return canonical_game(moved)


class Status(enum.Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    INAPPLICABLE = "Inapplicable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CheckResult:
    status: Status
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    note: str = ""

    def __post_init__(self):
        both = self.lhs is not None and self.rhs is not None
        if (self.status is Status.HOLDS) != (both and self.lhs == self.rhs):
            raise ValueError(f"inconsistent CheckResult {self!r}")

    @classmethod
    def compare(cls, lhs: Fraction, rhs: Fraction, note: str = "") -> "CheckResult":
        status = Status.HOLDS if lhs == rhs else Status.VIOLATED
        return cls(status, lhs, rhs, note)

    @classmethod
    def inapplicable(cls, note: str) -> "CheckResult":
        return cls(Status.INAPPLICABLE, note=note)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED
