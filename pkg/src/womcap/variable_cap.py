"""Optimal advertisement policies when capacity is chosen fresh each period.

Matching capacity to realized demand dominates every alternative, so the
capacity decision drops out and only the advertisement sequence remains. For
the forward-looking firm the optimal sequence is high-then-low, which turns
the search into a scan over the switch period; the myopic firm simply picks
the level with the better single-period profit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import (AdLevel, AdPolicy, ScenarioParams, SolverLimitError,
                    Trajectory, fixed_capacity, is_high_then_low,
                    match_demand, simulate, switch_points)

# Relative slack under which two policy profits are treated as the same
# optimum (floating-point noise from reordered but algebraically equal
# period arithmetic).
TIE_REL = 1e-11


class SolveMethod(enum.Enum):
    SWITCHING_SEARCH = "switching_search"
    MYOPIC = "myopic"
    EXHAUSTIVE = "exhaustive"
    BRANCH_AND_BOUND = "branch_and_bound"
    GRID_DP = "grid_dp"


@dataclass(frozen=True)
class SolveResult:
    policy: AdPolicy
    trajectory: Trajectory
    total_profit: float
    method: SolveMethod
    nodes_explored: int
    switching_points: tuple[int, ...]


def _finish(params: ScenarioParams, levels: tuple[AdLevel, ...],
            method: SolveMethod, nodes: int,
            constant: bool = False) -> SolveResult:
    policy = AdPolicy(levels)
    rule = fixed_capacity(params.capacity) if constant else match_demand()
    traj = simulate(params, policy, rule)
    return SolveResult(policy=policy, trajectory=traj,
                       total_profit=traj.total_profit, method=method,
                       nodes_explored=nodes,
                       switching_points=switch_points(levels))


def _fused_constants(params: ScenarioParams):
    """Per-instance constants for the inner simulation loops."""
    return (params.utility_ratio,
            params.l_level ** params.alpha,
            params.h_level ** params.alpha,
            params.market_size,
            params.price - params.cap_cost,
            params.ad_cost,
            params.w)


def matched_profit(params: ScenarioParams, levels) -> float:
    """Total profit of an ad sequence with capacity matched to demand."""
    k, l_pow, h_pow, lam, margin, c_a, w = _fused_constants(params)
    l_int, h_int = params.l_level, params.h_level
    r = params.r1
    total = 0.0
    for lev in levels:
        high = lev is AdLevel.HIGH
        post = r + (1.0 - r) * (h_pow if high else l_pow)
        dem = lam * (1.0 - k / post)
        if dem > 0.0:
            total += margin * dem
            r = min(1.0, max(0.0, (1.0 - w) * post + w))
        else:
            r = post
        total -= c_a * (h_int if high else l_int)
    return total


def solve_aware_variable(params: ScenarioParams) -> SolveResult:
    """Best high-then-low policy with capacity matched to demand.

    Scans every switch period; ties go to the policy with fewer high
    periods, which costs strictly less in advertisement for the same profit.
    """
    if params.capacity is not None:
        raise ValueError("variable-capacity solver requires no fixed capacity")
    n = params.horizon
    best_profit = -math.inf
    best_k = 0
    for h_count in range(n + 1):
        levels = (AdLevel.HIGH,) * h_count + (AdLevel.LOW,) * (n - h_count)
        profit = matched_profit(params, levels)
        if profit > best_profit:
            best_profit = profit
            best_k = h_count
    levels = (AdLevel.HIGH,) * best_k + (AdLevel.LOW,) * (n - best_k)
    return _finish(params, levels, SolveMethod.SWITCHING_SEARCH, n + 1)


def solve_naive_variable(params: ScenarioParams) -> SolveResult:
    """Per-period profit maximizer with capacity matched to demand.

    Each period the level with the larger single-period profit is chosen
    (ties go low) and the reputation rolls forward under full fill.
    """
    if params.capacity is not None:
        raise ValueError("variable-capacity solver requires no fixed capacity")
    k, l_pow, h_pow, lam, margin, c_a, w = _fused_constants(params)
    l_int, h_int = params.l_level, params.h_level
    r = params.r1
    levels = []
    for _ in range(params.horizon):
        choices = []
        for a_pow, a_int, lev in ((l_pow, l_int, AdLevel.LOW),
                                  (h_pow, h_int, AdLevel.HIGH)):
            post = r + (1.0 - r) * a_pow
            dem = max(0.0, lam * (1.0 - k / post))
            choices.append((margin * dem - c_a * a_int, post, dem, lev))
        low, high = choices
        pick = high if high[0] > low[0] else low
        profit, post, dem, lev = pick
        levels.append(lev)
        r = min(1.0, max(0.0, (1.0 - w) * post + w)) if dem > 0.0 else post
    return _finish(params, tuple(levels), SolveMethod.MYOPIC, params.horizon)


def exhaustive_variable(params: ScenarioParams, max_n: int = 14) -> SolveResult:
    """True optimum over every ad sequence, capacity matched to demand.

    Depth-first over the full binary tree, sharing prefix computations. The
    reported policy is the high-first lexicographically smallest sequence
    whose profit is within TIE_REL of the maximum, so algebraically tied
    optima resolve to the canonical front-loaded form.
    """
    if params.capacity is not None:
        raise ValueError("variable-capacity solver requires no fixed capacity")
    n = params.horizon
    if n > max_n:
        raise SolverLimitError(
            f"exhaustive search refused: horizon {n} exceeds cap {max_n}")
    k, l_pow, h_pow, lam, margin, c_a, w = _fused_constants(params)
    l_int, h_int = params.l_level, params.h_level
    branches = ((h_pow, h_int, AdLevel.HIGH), (l_pow, l_int, AdLevel.LOW))

    def step(r: float, a_pow: float, a_int: float) -> tuple[float, float]:
        post = r + (1.0 - r) * a_pow
        dem = lam * (1.0 - k / post)
        if dem > 0.0:
            return (margin * dem - c_a * a_int,
                    min(1.0, max(0.0, (1.0 - w) * post + w)))
        return (-c_a * a_int, post)

    def best_value(depth: int, r: float) -> float:
        if depth == n:
            return 0.0
        best = -math.inf
        for a_pow, a_int, _ in branches:
            gain, nxt = step(r, a_pow, a_int)
            value = gain + best_value(depth + 1, nxt)
            if value > best:
                best = value
        return best

    target = best_value(0, params.r1)
    slack = TIE_REL * max(1.0, abs(target))

    prefix: list[AdLevel] = []

    def first_hit(depth: int, r: float, acc: float) -> bool:
        if depth == n:
            return acc >= target - slack
        for a_pow, a_int, lev in branches:
            gain, nxt = step(r, a_pow, a_int)
            prefix.append(lev)
            if first_hit(depth + 1, nxt, acc + gain):
                return True
            prefix.pop()
        return False

    if not first_hit(0, params.r1, 0.0):
        raise AssertionError("exhaustive search lost its own optimum")
    return _finish(params, tuple(prefix), SolveMethod.EXHAUSTIVE, 2 ** n)


def check_capacity_optimality(params: ScenarioParams, policy: AdPolicy,
                              perturbation: float) -> bool:
    """True when no single-period capacity nudge off demand raises profit.

    ``perturbation`` is the relative size of the nudge: each period's
    capacity is set to demand scaled by (1 +/- perturbation) in turn while
    all other periods keep capacity matched to demand.
    """
    if not perturbation > 0.0:
        raise ValueError("perturbation must be positive")
    base = simulate(params, policy, match_demand()).total_profit
    slack = 1e-9 * max(1.0, abs(base))
    for j in range(1, params.horizon + 1):
        for sign in (1.0, -1.0):
            def rule(period: int, dem: float, _j=j, _s=sign) -> float:
                if period == _j:
                    return max(0.0, dem * (1.0 + _s * perturbation))
                return dem
            if simulate(params, policy, rule).total_profit > base + slack:
                return False
    return True


def is_switching_form(policy: AdPolicy) -> bool:
    """True for high-then-low policies (either block possibly empty)."""
    return is_high_then_low(policy.levels)
