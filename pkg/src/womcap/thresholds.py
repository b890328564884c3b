"""Closed-form decision thresholds for the myopically optimizing firm.

Under either capacity regime the single-period profit comparison between the
two advertisement levels reduces to comparing the current reputation against
a handful of thresholds. Two of them (``nu`` and ``beta``) are defined only
implicitly and are located by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import states
from .model import AdLevel, ScenarioParams


@dataclass(frozen=True)
class VariableThresholds:
    """Decision thresholds when capacity can be matched to demand.

    iota/rho: reputation where demand turns on under high/low advertisement.
    kappa: reputation where the extra margin from high advertisement covers
    its extra cost while low-level demand is still zero; absent when the
    margin scale ``tau`` is exactly zero. nu: upper end of the
    high-advertisement band, from the implicit marginal-gain equation;
    absent when that equation has no root in (0, 1).
    """

    iota: float
    rho: float
    kappa: Optional[float]
    tau: float
    nu: Optional[float]

    def __post_init__(self) -> None:
        if not self.iota < self.rho:
            raise ValueError("iota < rho must hold when demand is attainable")


@dataclass(frozen=True)
class ConstantThresholds:
    """Decision thresholds when capacity is fixed at S per period.

    gamma: reputation above which high advertisement pays for itself while
    low-level demand is zero. omega: reputation below which displacing
    unmet low-level demand pays when high advertisement already saturates
    capacity. phi: capacity revenue net of the extra cost of high
    advertisement. beta: analogue of nu for the both-below-capacity regime.
    gamma/omega are absent when their defining denominators vanish (or, for
    gamma, when high advertisement can never pay in its regime).
    """

    gamma: Optional[float]
    omega: Optional[float]
    phi: float
    beta: Optional[float]


def root_solve(f: Callable[[float], float], lo: float, hi: float,
               tol: float) -> Optional[float]:
    """Bisection root of ``f`` on [lo, hi]; None when the ends do not bracket.

    Runs until the bracket is narrower than ``tol`` or cannot shrink
    further in floating point, so steep roots still resolve to full
    precision. Absence of a sign change is a value, not an error.
    """
    if not lo < hi:
        raise ValueError("lo < hi required")
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# Bisection domain for the implicit thresholds; their defining functions can
# be singular at zero reputation.
_ROOT_LO = 1e-12
_ROOT_HI = 1.0 - 1e-12
# Argument tolerance 0.0 lets the bracket collapse to float resolution,
# which the residual requirements on nu/beta need on steep instances.
_ROOT_TOL = 0.0


def _rep_threshold(target: float, a_pow: float) -> float:
    denom = 1.0 - a_pow
    if denom <= 0.0:
        return -math.inf if target <= 1.0 else math.inf
    return (target - a_pow) / denom


def _inverse_gap(r: float, l_pow: float, h_pow: float) -> float:
    """1/post_ad(r, L) - 1/post_ad(r, H); strictly decreasing on (0, 1)."""
    return 1.0 / (r + (1.0 - r) * l_pow) - 1.0 / (r + (1.0 - r) * h_pow)


def variable_thresholds(params: ScenarioParams) -> VariableThresholds:
    """Threshold set for the demand-matching (variable capacity) regime."""
    k = params.utility_ratio
    l_pow = params.l_level ** params.alpha
    h_pow = params.h_level ** params.alpha
    lam = params.market_size
    margin = params.price - params.cap_cost
    ad_gap = params.ad_cost * (params.h_level - params.l_level)

    iota = _rep_threshold(k, h_pow)
    rho = _rep_threshold(k, l_pow)
    tau = lam * margin - ad_gap
    if tau == 0.0:
        kappa: Optional[float] = None
    else:
        kappa = _rep_threshold(lam * margin * k / tau, h_pow)
    rhs = params.rep_value * ad_gap / (lam * margin * (params.reservation + params.price))
    nu = root_solve(lambda r: _inverse_gap(r, l_pow, h_pow) - rhs,
                    _ROOT_LO, _ROOT_HI, _ROOT_TOL)
    return VariableThresholds(iota=iota, rho=rho, kappa=kappa, tau=tau, nu=nu)


def constant_thresholds(params: ScenarioParams) -> ConstantThresholds:
    """Threshold set for the fixed-capacity regime."""
    if params.capacity is None:
        raise ValueError("constant thresholds require a fixed capacity")
    k = params.utility_ratio
    l_pow = params.l_level ** params.alpha
    h_pow = params.h_level ** params.alpha
    lam = params.market_size
    s = params.capacity
    p = params.price
    ad_gap = params.ad_cost * (params.h_level - params.l_level)

    phi = p * s - ad_gap
    # High advertisement can pay against zero low-level demand only when its
    # extra cost is below the whole market's revenue.
    gamma_denom = p * lam - ad_gap
    if gamma_denom <= 0.0:
        gamma: Optional[float] = None
    else:
        gamma = _rep_threshold(k * p * lam / gamma_denom, h_pow)
    omega_denom = p * lam - p * s + ad_gap
    if omega_denom <= 0.0:
        omega: Optional[float] = None
    else:
        omega = _rep_threshold(k * p * lam / omega_denom, l_pow)
    rhs = params.rep_value * ad_gap / (p * lam * (params.reservation + params.price))
    beta = root_solve(lambda r: _inverse_gap(r, l_pow, h_pow) - rhs,
                      _ROOT_LO, _ROOT_HI, _ROOT_TOL)
    return ConstantThresholds(gamma=gamma, omega=omega, phi=phi, beta=beta)


def variable_ad_rule(th: VariableThresholds, r: float) -> AdLevel:
    """Myopic advertisement choice from the variable-capacity thresholds.

    High only on the open band between the entry threshold (where the gain
    from high advertisement first covers its extra cost) and the exit
    threshold (where the marginal reputation lift stops paying); low
    everywhere else and on ties.
    """
    if th.tau <= 0.0:
        return AdLevel.LOW
    if not th.iota < th.rho:
        return AdLevel.LOW
    kappa = th.kappa if th.kappa is not None else math.inf
    lower = min(max(th.iota, kappa), th.rho)
    upper = max(th.rho, th.nu) if th.nu is not None else th.rho
    return AdLevel.HIGH if lower < r < upper else AdLevel.LOW


def constant_ad_rule(params: ScenarioParams, th: ConstantThresholds,
                     r: float) -> AdLevel:
    """Myopic advertisement choice from the fixed-capacity thresholds.

    Routed by the demand-vs-capacity state of the period: saturated and
    dead markets always advertise low; in the remaining states the
    reputation is compared against the threshold that prices the gain from
    switching to high advertisement in that state.
    """
    state = states.classify_state(params, r)
    if state is states.MarketState.A or state is states.MarketState.F:
        return AdLevel.LOW
    if state is states.MarketState.D:
        return AdLevel.HIGH if th.phi > 0.0 else AdLevel.LOW
    if state is states.MarketState.B:
        if th.phi > 0.0 and th.omega is not None and r < th.omega:
            return AdLevel.HIGH
        return AdLevel.LOW
    if state is states.MarketState.E:
        if th.gamma is not None and r > th.gamma:
            return AdLevel.HIGH
        return AdLevel.LOW
    # State C: both levels leave demand strictly inside capacity.
    if th.beta is not None and r < th.beta:
        return AdLevel.HIGH
    return AdLevel.LOW
