"""Demand-vs-capacity state classification for fixed-capacity firms.

A period is classified by how much demand the firm could generate under each
advertisement level relative to its fixed capacity. Four reputation
thresholds delimit the six states, and the set of states that a parameter
set can ever produce is computable in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import EPS, ScenarioParams, demand, post_ad_reputation


class MarketState(enum.Enum):
    """Demand regimes at the start of a period (see ``classify_state``)."""

    A = "A"  # demand >= capacity under both levels
    B = "B"  # >= capacity under high, positive but below under low
    C = "C"  # positive and below capacity under both levels
    D = "D"  # >= capacity under high, zero under low
    E = "E"  # positive below capacity under high, zero under low
    F = "F"  # zero under both levels

    def __str__(self) -> str:
        return self.value


# The only state sets a parameter set can produce.
LEGAL_OMEGA_SETS: tuple[frozenset[MarketState], ...] = tuple(
    frozenset(MarketState(ch) for ch in tag)
    for tag in ("A", "AB", "ABC", "ABCE", "ABCEF", "ABD", "ABDE", "ABDEF",
                "C", "CE", "CEF")
)


@dataclass(frozen=True)
class StateThresholds:
    """Reputation cutoffs separating the states; may fall outside [0, 1].

    x1/x2: minimum reputation for demand to reach capacity under low/high
    advertisement. y1/y2: minimum reputation for demand to be positive under
    low/high advertisement. x-values are -inf when capacity is zero (any
    demand reaches it) and +inf when capacity equals the market size.
    """

    x1: float
    x2: float
    y1: float
    y2: float

    def __post_init__(self) -> None:
        # Strict orderings hold in exact arithmetic whenever the capacity
        # cutoffs are meaningful (reachable within [0, 1]); tiny
        # advertisement lifts can underflow and collapse a pair to equal
        # floats, so equality is tolerated. Above 1 the x-pair may invert
        # harmlessly.
        if self.y1 < self.y2:
            raise ValueError("state thresholds out of order: y1 < y2")
        if self.x1 < 1.0 and self.x1 < self.x2:
            raise ValueError("state thresholds out of order: x1 < x2")
        if math.isfinite(self.x1):
            if not (self.x1 >= self.y1 and self.x2 >= self.y2):
                raise ValueError("capacity cutoffs below demand-onset cutoffs")


def _rep_threshold(target: float, a_pow: float) -> float:
    """Reputation r with r + (1 - r) * a_pow == target; +/-inf if degenerate."""
    denom = 1.0 - a_pow
    if denom <= 0.0:
        # Advertisement saturates reputation at 1; the conditionholds for
        # every r iff the target is at most 1.
        return -math.inf if target <= 1.0 else math.inf
    return (target - a_pow) / denom


def thresholds(params: ScenarioParams) -> StateThresholds:
    """The four reputation cutoffs for a fixed-capacity scenario."""
    if params.capacity is None:
        raise ValueError("state thresholds require a fixed capacity")
    s = params.capacity
    lam = params.market_size
    k = params.utility_ratio
    l_pow = params.l_level ** params.alpha
    h_pow = params.h_level ** params.alpha
    if s <= 0.0:
        x1 = x2 = -math.inf  # any demand (even zero) reaches zero capacity
    elif s >= lam:
        x1 = x2 = math.inf   # demand is strictly below the market size
    else:
        reach = k * lam / (lam - s)
        x1 = _rep_threshold(reach, l_pow)
        x2 = _rep_threshold(reach, h_pow)
    y1 = _rep_threshold(k, l_pow)
    y2 = _rep_threshold(k, h_pow)
    return StateThresholds(x1=x1, x2=x2, y1=y1, y2=y2)


def classify_state(params: ScenarioParams, r: float,
                   th: StateThresholds | None = None) -> MarketState:
    """State of a period that starts at reputation ``r``.

    Threshold comparisons with the boundary conventions: A closed below,
    F closed above, D closed on both sides, remaining intervals open.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError("reputation must be in [0, 1]")
    if th is None:
        th = thresholds(params)
    if r >= th.x1 - EPS:
        return MarketState.A
    if r >= th.x2 - EPS:
        return MarketState.B if r > th.y1 + EPS else MarketState.D
    if r > th.y1 + EPS:
        return MarketState.C
    if r > th.y2 + EPS:
        return MarketState.E
    return MarketState.F


def classify_state_by_demand(params: ScenarioParams, r: float) -> MarketState:
    """Same classification computed from realized demand under each level.

    Companion to ``classify_state``; the two must agree away from boundary
    collars, which the test suite checks on random draws.
    """
    if params.capacity is None:
        raise ValueError("state classification requires a fixed capacity")
    s = params.capacity
    d_low = demand(params, post_ad_reputation(r, params.l_level, params.alpha))
    d_high = demand(params, post_ad_reputation(r, params.h_level, params.alpha))
    if d_low >= s - EPS:
        return MarketState.A
    if d_high >= s - EPS:
        return MarketState.B if d_low > EPS else MarketState.D
    if d_high > EPS:
        return MarketState.C if d_low > EPS else MarketState.E
    return MarketState.F


@dataclass(frozen=True)
class OmegaSet:
    """The set of states a parameter set can produce over any trajectory."""

    states: frozenset[MarketState]

    def __post_init__(self) -> None:
        if self.states not in LEGAL_OMEGA_SETS:
            raise ValueError(f"illegal state set {self.tag()}")

    def tag(self) -> str:
        return "".join(sorted(st.value for st in self.states))

    def __contains__(self, state: MarketState) -> bool:
        return state in self.states


def omega(params: ScenarioParams) -> OmegaSet:
    """Closed-form set of observable states for a fixed-capacity scenario.

    Branches on the ordering of the demand-onset cutoff under low
    advertisement (y1) versus the capacity cutoff under high advertisement
    (x2); exact ties route through the y1 <= x2 branch, where the interval
    between them is empty either way.
    """
    if params.capacity is None:
        raise ValueError("omega requires a fixed capacity")
    s = params.capacity
    lam = params.market_size
    if s <= 0.0:
        return OmegaSet(frozenset({MarketState.A}))
    k = params.utility_ratio
    l_pow = params.l_level ** params.alpha
    h_pow = params.h_level ** params.alpha
    reach = k * lam / (lam - s) if s < lam else math.inf
    th = thresholds(params)

    def tags(text: str) -> OmegaSet:
        return OmegaSet(frozenset(MarketState(ch) for ch in text))

    if th.y1 > th.x2:
        # Capacity is reachable under high advertisement before demand under
        # low advertisement turns on, so the all-or-nothing state D exists.
        if reach <= l_pow:
            return tags("A")
        if reach <= h_pow:
            return tags("AB") if k <= l_pow else tags("ABD")
        if k > h_pow:
            return tags("ABDEF")
        if k > l_pow:
            return tags("ABDE")
        raise AssertionError("unreachable state-set corner (y1 > x2)")
    # y1 <= x2: the mixed state C replaces D.
    if reach <= l_pow:
        return tags("A")
    if reach <= h_pow:
        return tags("AB")
    if reach < 1.0:
        if k <= l_pow:
            return tags("ABC")
        return tags("ABCE") if k <= h_pow else tags("ABCEF")
    if k <= l_pow:
        return tags("C")
    return tags("CE") if k <= h_pow else tags("CEF")
