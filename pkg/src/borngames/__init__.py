"""Exact-arithmetic models of quantum measurement games and the axioms used
to argue that a rational agent must value them by the Born rule."""

from .core import (
    CheckResult,
    Game,
    Inapplicable,
    Observable,
    State,
    Status,
    canonical_game,
    mk_game,
    mk_observable,
    mk_state,
    negate_payoffs,
    shift_payoffs,
    shift_state,
    swap_payoffs,
)
from .valuations import (
    BORN,
    BornValuation,
    ConvexWeightValuation,
    Selector,
    SelectorValuation,
    TableValuation,
    born_value,
    convex_weight_value,
    maxabs_selector,
    maxabs_valuation,
    selector_value,
)
from .axioms import (
    AxiomId,
    check_born_general,
    check_exchange,
    check_naive_displacement,
    check_payoff_displacement,
    check_pivotal,
    check_zero_sum,
    replay_derivation,
    worked_counterexample,
)
from .search import (
    build_universe,
    enumerate_selectors,
    enumerate_weight_valuations,
    run_search,
)

__version__ = "0.1.0"
