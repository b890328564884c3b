"""Market dynamics for a reputation-driven service firm.

A firm advertises at one of two intensities each period. Advertisement lifts
reputation immediately; demand is a linear function of the inverse of the
post-advertisement reputation; the realized fill rate feeds back into next
period's reputation through word-of-mouth. Everything here is a pure function
of its inputs; solvers live in the sibling modules.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

# Absolute epsilon for boundary comparisons throughout the package.
EPS = 1e-12


class ScenarioError(ValueError):
    """A scenario violates one of its declared invariants.

    The message names the violated invariant so callers can surface it.
    """


class SolverLimitError(RuntimeError):
    """A solver refused to run or gave up because a resource cap was hit."""


@dataclass(frozen=True)
class ScenarioParams:
    """All market and firm parameters of one problem instance.

    ``capacity`` is present only for fixed-capacity problems; the
    variable-capacity solvers require it to be absent.
    """

    r1: float            # starting reputation, in [0, 1]
    l_level: float       # low advertisement intensity, in (0, 1)
    h_level: float       # high advertisement intensity, in (l_level, 1]
    alpha: float         # advertisement resistance, > 0
    w: float             # word-of-mouth weight, in [0, 1]
    market_size: float   # consumer population size, > 0
    cap_cost: float      # cost per unit capacity per period
    rep_value: float     # monetary value of taste-weighted reputation
    reservation: float   # reservation utility of the outside option
    price: float         # price per unit of service
    ad_cost: float       # cost per unit of advertisement effort
    horizon: int         # number of periods, >= 1
    capacity: Optional[float] = None  # fixed per-period capacity, if constant

    def __post_init__(self) -> None:
        if not 0.0 <= self.r1 <= 1.0:
            raise ScenarioError("0 <= r1 <= 1")
        if not 0.0 < self.l_level < self.h_level <= 1.0:
            raise ScenarioError("0 < l_level < h_level <= 1")
        if not self.alpha > 0.0:
            raise ScenarioError("alpha > 0")
        if not 0.0 <= self.w <= 1.0:
            raise ScenarioError("0 <= w <= 1")
        if not self.market_size > 0.0:
            raise ScenarioError("market_size > 0")
        if not self.rep_value > 0.0:
            raise ScenarioError("rep_value > 0")
        if not self.price > self.cap_cost:
            raise ScenarioError("price > cap_cost")
        if not (self.reservation + self.price) / self.rep_value < 1.0:
            raise ScenarioError("(reservation + price) / rep_value < 1")
        if not (isinstance(self.horizon, int) and self.horizon >= 1):
            raise ScenarioError("horizon is a positive integer")
        if self.capacity is not None:
            if not 0.0 <= self.capacity <= self.market_size:
                raise ScenarioError("0 <= capacity <= market_size")

    @property
    def utility_ratio(self) -> float:
        """(reservation + price) / rep_value; the demand cutoff scale."""
        return (self.reservation + self.price) / self.rep_value


class AdLevel(enum.Enum):
    """The two advertisement intensities a firm can choose."""

    HIGH = "H"
    LOW = "L"

    def intensity(self, params: ScenarioParams) -> float:
        return params.h_level if self is AdLevel.HIGH else params.l_level

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_char(cls, char: str) -> "AdLevel":
        try:
            return cls(char.upper())
        except ValueError:
            raise ValueError(f"advertisement level must be H or L, got {char!r}") from None


@dataclass(frozen=True)
class AdPolicy:
    """An ordered advertisement plan, one level per period."""

    levels: tuple[AdLevel, ...]

    @classmethod
    def from_string(cls, text: str) -> "AdPolicy":
        return cls(tuple(AdLevel.from_char(ch) for ch in text.strip()))

    def __str__(self) -> str:
        return "".join(lev.value for lev in self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    def h_count(self) -> int:
        return sum(1 for lev in self.levels if lev is AdLevel.HIGH)


@dataclass(frozen=True)
class PeriodRecord:
    """Everything observable about one period of a simulated trajectory."""

    period: int          # 1-based
    reputation_in: float
    post_ad: float
    ad: AdLevel
    demand: float
    capacity_used: float
    fill_rate: float
    profit: float


@dataclass(frozen=True)
class Trajectory:
    records: tuple[PeriodRecord, ...]
    total_profit: float

    def reputations(self) -> list[float]:
        """Start-of-period reputation per period."""
        return [rec.reputation_in for rec in self.records]


# A capacity rule maps (1-based period, realized demand) to installed capacity.
CapacityRule = Callable[[int, float], float]


def match_demand() -> CapacityRule:
    """Capacity rule that installs exactly the realized demand each period."""
    return lambda period, demand: demand


def fixed_capacity(s: float) -> CapacityRule:
    """Capacity rule that installs the same amount every period."""
    return lambda period, demand: s


def post_ad_reputation(r: float, a: float, alpha: float) -> float:
    """Reputation right after an advertisement of intensity ``a`` lands.

    The lift is (1 - r) * a**alpha, so advertisement never hurts and
    saturates at full reputation.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError("reputation must be in [0, 1]")
    if not 0.0 < a <= 1.0:
        raise ValueError("advertisement intensity must be in (0, 1]")
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    return r + (1.0 - r) * a ** alpha


def demand(params: ScenarioParams, post_ad: float) -> float:
    """Realized demand given the post-advertisement reputation.

    Zero reputation is taken to generate zero demand (the continuous
    extension of the clamped demand curve).
    """
    if not 0.0 <= post_ad <= 1.0:
        raise ValueError("post_ad must be in [0, 1]")
    if post_ad <= 0.0:
        return 0.0
    return max(0.0, params.market_size * (1.0 - params.utility_ratio / post_ad))


def wom_update(params: ScenarioParams, post_ad: float, fill_rate: float,
               demand_level: float) -> float:
    """Next period's reputation after word-of-mouth about the fill rate.

    With no demand there is no word-of-mouth and reputation carries over
    unchanged.
    """
    if demand_level > 0.0:
        mixed = (1.0 - params.w) * post_ad + params.w * fill_rate
        # Convex combination of unit-interval values; clamp float drift.
        return min(1.0, max(0.0, mixed))
    return post_ad


def period_profit(params: ScenarioParams, demand_level: float,
                  capacity_used: float, ad_intensity: float) -> float:
    """Single-period profit: sales revenue minus capacity and ad costs."""
    return (params.price * min(capacity_used, demand_level)
            - params.cap_cost * capacity_used
            - params.ad_cost * ad_intensity)


def simulate(params: ScenarioParams, policy: AdPolicy,
             capacity_rule: CapacityRule) -> Trajectory:
    """Run the per-period pipeline: advertise, realize demand, serve, update.

    Deterministic; identical inputs give bit-identical trajectories. The
    fill rate is recorded as 1.0 on zero-demand periods for display, but the
    reputation update ignores it in that case.
    """
    if len(policy) != params.horizon:
        raise ValueError(
            f"policy length {len(policy)} != horizon {params.horizon}")
    records = []
    r = params.r1
    total = 0.0
    for i, lev in enumerate(policy.levels, start=1):
        a = lev.intensity(params)
        post = post_ad_reputation(r, a, params.alpha)
        dem = demand(params, post)
        cap = capacity_rule(i, dem)
        if cap < 0.0:
            raise ValueError("capacity rule returned negative capacity")
        if dem > 0.0:
            fill = 1.0 if cap >= dem else cap / dem
        else:
            fill = 1.0
        profit = period_profit(params, dem, cap, a)
        total += profit
        records.append(PeriodRecord(
            period=i, reputation_in=r, post_ad=post, ad=lev, demand=dem,
            capacity_used=cap, fill_rate=fill, profit=profit))
        r = wom_update(params, post, fill, dem)
    return Trajectory(records=tuple(records), total_profit=total)


def switch_points(levels: Sequence[AdLevel]) -> tuple[int, ...]:
    """1-based periods at which the advertisement level changes."""
    return tuple(i + 1 for i in range(1, len(levels))
                 if levels[i] is not levels[i - 1])


def is_high_then_low(levels: Sequence[AdLevel]) -> bool:
    """True for policies of the form H..H L..L (either block may be empty)."""
    seen_low = False
    for lev in levels:
        if lev is AdLevel.LOW:
            seen_low = True
        elif seen_low:
            return False
    return True
