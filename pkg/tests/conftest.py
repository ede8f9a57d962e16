from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from borngames.core import canonical_game, mk_game, mk_observable, mk_state

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=150)
settings.load_profile("repo")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def observables(draw, min_size=1, max_size=5):
    eigs = draw(st.lists(rationals, min_size=min_size, max_size=max_size, unique=True))
    return mk_observable(eigs)


@st.composite
def states(draw, min_support=1, max_support=4, observable=None):
    obs = observable if observable is not None else draw(observables(min_size=min_support))
    support = draw(st.lists(st.sampled_from(obs.spectrum), min_size=min(min_support, len(obs.spectrum)),
                            max_size=min(max_support, len(obs.spectrum)), unique=True))
    weights = {x: draw(st.integers(1, 5)) for x in support}
    return mk_state(obs, weights)


@st.composite
def games(draw, min_support=1, max_support=4):
    s = draw(states(min_support=min_support, max_support=max_support))
    return mk_game(s, {x: draw(rationals) for x in s.support})


@st.composite
def equal_pairs(draw):
    """A two-outcome equal-weight state."""
    obs = draw(observables(min_size=2))
    x1, x2 = draw(st.lists(st.sampled_from(obs.spectrum), min_size=2, max_size=2, unique=True))
    return mk_state(obs, {x1: 1, x2: 1})


@pytest.fixture
def pair():
    """The two-branch state with x1 = 1, x2 = 0 on the spectrum {0, 1}."""
    return mk_state(mk_observable([0, 1]), {0: 1, 1: 1})


@pytest.fixture
def pair_game(pair):
    return canonical_game(pair)


@pytest.fixture
def wide():
    return mk_observable([-1, 0, 1])


def F(x):
    return Fraction(x)
