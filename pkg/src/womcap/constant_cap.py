"""Optimal and myopic advertisement policies under a fixed service capacity.

With capacity fixed, over-promising produces unfilled demand and negative
word-of-mouth, so reputation (and the optimal policy) need not be monotone.
The forward-looking optimum is found exactly by depth-first branch and bound
over the ad-sequence tree; a discretized value-recursion approximation is
available for long horizons. Structural screens (single-switch condition,
the always-high bound, and the stay-saturated condition) come alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import states
from .model import AdLevel, EPS, ScenarioParams, SolverLimitError
from .variable_cap import SolveMethod, SolveResult, _finish

DEFAULT_NODE_CAP = 4_000_000
EXACT_HORIZON_CAP = 25


class NodeCapExceeded(SolverLimitError):
    """Branch-and-bound ran past its node budget before proving optimality."""


def _fused_constants(params: ScenarioParams):
    if params.capacity is None:
        raise ValueError("constant-capacity solver requires a fixed capacity")
    return (params.utility_ratio,
            params.l_level ** params.alpha,
            params.h_level ** params.alpha,
            params.market_size,
            params.capacity,
            params.price,
            params.cap_cost,
            params.ad_cost,
            params.w)


def constant_profit(params: ScenarioParams, levels) -> float:
    """Total profit of an ad sequence under the fixed capacity."""
    k, l_pow, h_pow, lam, s, p, c, c_a, w = _fused_constants(params)
    l_int, h_int = params.l_level, params.h_level
    r = params.r1
    total = 0.0
    for lev in levels:
        high = lev is AdLevel.HIGH
        post = r + (1.0 - r) * (h_pow if high else l_pow)
        dem = lam * (1.0 - k / post)
        if dem > 0.0:
            served = s if s < dem else dem
            fill = 1.0 if dem <= s else s / dem
            total += p * served
            r = min(1.0, max(0.0, (1.0 - w) * post + w * fill))
        else:
            r = post
        total -= c * s + c_a * (h_int if high else l_int)
    return total


def solve_aware_constant_exact(params: ScenarioParams,
                               node_cap: int = DEFAULT_NODE_CAP) -> SolveResult:
    """Exact optimum by depth-first branch and bound over ad sequences.

    The per-period optimistic bound is full-capacity revenue at the cheap
    advertisement level; it never undershoots a reachable period profit, so
    pruning is lossless. The low branch is explored first and the incumbent
    only replaced on strict improvement, so exact ties resolve to the
    lexicographically low-first sequence.
    """
    k, l_pow, h_pow, lam, s, p, c, c_a, w = _fused_constants(params)
    n = params.horizon
    if n > EXACT_HORIZON_CAP:
        raise SolverLimitError(
            f"exact search refused: horizon {n} exceeds cap {EXACT_HORIZON_CAP}")
    l_int, h_int = params.l_level, params.h_level
    per_period_max = p * min(lam, s) - c * s - c_a * l_int

    best_profit = -math.inf
    best_levels: tuple[AdLevel, ...] = ()
    prefix: list[AdLevel] = []
    nodes = 0

    def descend(depth: int, r: float, acc: float) -> None:
        nonlocal best_profit, best_levels, nodes
        if depth == n:
            if acc > best_profit:
                best_profit = acc
                best_levels = tuple(prefix)
            return
        nodes += 1
        if nodes > node_cap:
            raise NodeCapExceeded(
                f"node cap {node_cap} exceeded at depth {depth}")
        if acc + (n - depth) * per_period_max <= best_profit:
            return
        for a_pow, a_int, lev in ((l_pow, l_int, AdLevel.LOW),
                                  (h_pow, h_int, AdLevel.HIGH)):
            post = r + (1.0 - r) * a_pow
            dem = lam * (1.0 - k / post)
            if dem > 0.0:
                served = s if s < dem else dem
                fill = 1.0 if dem <= s else s / dem
                gain = p * served - c * s - c_a * a_int
                nxt = min(1.0, max(0.0, (1.0 - w) * post + w * fill))
            else:
                gain = -(c * s + c_a * a_int)
                nxt = post
            prefix.append(lev)
            descend(depth + 1, nxt, acc + gain)
            prefix.pop()

    descend(0, params.r1, 0.0)
    return _finish(params, best_levels, SolveMethod.BRANCH_AND_BOUND, nodes,
                   constant=True)


def solve_aware_constant_grid(params: ScenarioParams,
                              grid_size: int = 2001) -> SolveResult:
    """Approximate optimum by backward recursion on a reputation grid.

    Continuation values at off-grid successor reputations are linearly
    interpolated rather than rounded, then a forward pass re-evaluates both
    actions at the exactly propagated reputation to extract a concrete
    policy, whose profit is computed exactly.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    k, l_pow, h_pow, lam, s, p, c, c_a, w = _fused_constants(params)
    n = params.horizon
    l_int, h_int = params.l_level, params.h_level
    grid = np.linspace(0.0, 1.0, grid_size)

    def action_step(r, a_pow, a_int):
        """Vectorized one-period reward and successor reputation."""
        post = r + (1.0 - r) * a_pow
        dem = np.maximum(0.0, lam * (1.0 - k / post))
        served = np.minimum(dem, s)
        fill = np.where(dem > s, s / np.maximum(dem, 1e-300), 1.0)
        gain = p * served - c * s - c_a * a_int
        nxt = np.where(dem > 0.0, (1.0 - w) * post + w * fill, post)
        return gain, np.clip(nxt, 0.0, 1.0)

    # continuations[i] holds the value-to-go of periods i+2..N on the grid,
    # i.e. the continuation seen when acting in (0-based) period i.
    value = np.zeros(grid_size)
    continuations: list[np.ndarray] = [value] * n
    for i in range(n - 1, -1, -1):
        continuations[i] = value
        best = None
        for a_pow, a_int in ((l_pow, l_int), (h_pow, h_int)):
            gain, nxt = action_step(grid, a_pow, a_int)
            q = gain + np.interp(nxt, grid, value)
            best = q if best is None else np.maximum(best, q)
        value = best

    levels: list[AdLevel] = []
    r = params.r1
    for i in range(n):
        continuation = continuations[i]
        best_q = -math.inf
        best = None
        for a_pow, a_int, lev in ((l_pow, l_int, AdLevel.LOW),
                                  (h_pow, h_int, AdLevel.HIGH)):
            post = r + (1.0 - r) * a_pow
            dem = max(0.0, lam * (1.0 - k / post))
            served = min(dem, s)
            fill = 1.0 if dem <= s else s / dem
            gain = p * served - c * s - c_a * a_int
            nxt = min(1.0, max(0.0, (1.0 - w) * post + w * fill)) \
                if dem > 0.0 else post
            q = gain + float(np.interp(nxt, grid, continuation))
            if q > best_q:
                best_q = q
                best = (lev, nxt)
        levels.append(best[0])
        r = best[1]
    return _finish(params, tuple(levels), SolveMethod.GRID_DP,
                   grid_size * n, constant=True)


def solve_naive_constant(params: ScenarioParams) -> SolveResult:
    """Per-period profit maximizer under the fixed capacity (ties go low)."""
    k, l_pow, h_pow, lam, s, p, c, c_a, w = _fused_constants(params)
    l_int, h_int = params.l_level, params.h_level
    r = params.r1
    levels = []
    for _ in range(params.horizon):
        choices = []
        for a_pow, a_int, lev in ((l_pow, l_int, AdLevel.LOW),
                                  (h_pow, h_int, AdLevel.HIGH)):
            post = r + (1.0 - r) * a_pow
            dem = max(0.0, lam * (1.0 - k / post))
            served = min(dem, s)
            profit = p * served - c * s - c_a * a_int
            choices.append((profit, post, dem, lev))
        low, high = choices
        profit, post, dem, lev = high if high[0] > low[0] else low
        levels.append(lev)
        if dem > 0.0:
            fill = 1.0 if dem <= s else s / dem
            r = min(1.0, max(0.0, (1.0 - w) * post + w * fill))
        else:
            r = post
    return _finish(params, tuple(levels), SolveMethod.MYOPIC, params.horizon,
                   constant=True)


def lemma1_upper_bound(params: ScenarioParams) -> int:
    """High-ad count of the rule: low when demand saturates capacity either
    way, high otherwise.

    Valid (and an upper bound on the optimal high count) only when high
    advertisement always reaches capacity, i.e. every observable state has
    saturated demand under the high level; raises otherwise.
    """
    omega = states.omega(params)
    allowed = {states.MarketState.A, states.MarketState.B, states.MarketState.D}
    if not omega.states <= allowed:
        raise ValueError(
            "bound inapplicable: high advertisement cannot always reach "
            f"capacity (observable states {omega.tag()})")
    th = states.thresholds(params)
    k, l_pow, h_pow, lam, s, p, c, c_a, w = _fused_constants(params)
    r = params.r1
    h_count = 0
    for _ in range(params.horizon):
        state = states.classify_state(params, r, th)
        high = state is not states.MarketState.A
        if high:
            h_count += 1
        post = r + (1.0 - r) * (h_pow if high else l_pow)
        dem = max(0.0, lam * (1.0 - k / post))
        if dem > 0.0:
            fill = 1.0 if dem <= s else s / dem
            r = min(1.0, max(0.0, (1.0 - w) * post + w * fill))
        else:
            r = post
    return h_count


def prop4_applies(params: ScenarioParams) -> bool:
    """True when demand can never exceed the fixed capacity.

    Peak demand (at full reputation) is market_size * (1 - utility_ratio);
    when capacity covers it, the forward-looking optimum is single-switch
    high-then-low, as in the variable-capacity problem.
    """
    if params.capacity is None:
        raise ValueError("requires a fixed capacity")
    return params.market_size * (1.0 - params.utility_ratio) <= params.capacity


@dataclass(frozen=True)
class Prop5Report:
    """Whether a saturated market is absorbing under low advertisement.

    ``roots`` delimits, in start-of-period reputation terms under low
    advertisement, the band from which the firm would drop back below the
    saturation cutoff ``x1``; when that band misses [x1, 1) (and the
    saturation cutoff itself is attainable), the firm stays saturated on
    low advertisement forever.
    """

    applicable: bool
    x1: float
    roots: Optional[tuple[float, float]]
    condition15_holds: bool
    intervals_disjoint: bool


def prop5_check(params: ScenarioParams) -> Prop5Report:
    """Evaluate the stay-saturated screen for a fixed-capacity scenario."""
    k, l_pow, h_pow, lam, s, p, c, c_a, w = _fused_constants(params)
    th = states.thresholds(params)
    x1 = th.x1
    reach = k * lam / (lam - s) if s < lam else math.inf
    condition15 = 1.0 > reach > l_pow

    # Post-advertisement reputations from which word-of-mouth pulls the next
    # reputation below x1: the open set where
    # (1 - w) * post^2 + (w s / lam - x1 - (1 - w) k) * post + x1 k < 0.
    qa = 1.0 - w
    qb = w * s / lam - x1 - (1.0 - w) * k
    qc = x1 * k
    roots_r: Optional[tuple[float, float]] = None
    lo = hi = None
    if qa > 0.0:
        disc = qb * qb - 4.0 * qa * qc
        if disc >= 0.0:
            sq = math.sqrt(disc)
            lo = (-qb - sq) / (2.0 * qa)
            hi = (-qb + sq) / (2.0 * qa)
    else:
        # Fully word-of-mouth-driven reputation: the quadratic degenerates
        # to a linear condition in the post-advertisement reputation.
        if qb < 0.0:
            lo, hi = -qc / qb, math.inf
        elif qb > 0.0:
            lo, hi = -math.inf, -qc / qb

    if lo is None:
        disjoint = True
    else:
        denom = 1.0 - l_pow
        r_lo = (lo - l_pow) / denom if math.isfinite(lo) else lo
        r_hi = (hi - l_pow) / denom if math.isfinite(hi) else hi
        roots_r = (r_lo, r_hi)
        # [x1, 1) is empty when the saturation cutoff is unreachable.
        disjoint = (x1 >= 1.0 - EPS or r_hi <= x1 + EPS
                    or r_lo >= 1.0 - EPS)

    return Prop5Report(applicable=condition15 and disjoint, x1=x1,
                       roots=roots_r, condition15_holds=condition15,
                       intervals_disjoint=disjoint)
