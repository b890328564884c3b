"""Seeded instance generation, one-parameter sweeps, and value of information.

Instances are drawn from fixed uniform ranges per parameter. A sweep holds
one base scenario fixed, redraws a single parameter from its range with a
per-row derived seed, solves the forward-looking and myopic firms, and
reports the percentage value of information row by row. Rows are
independent, so sweeps can be solved in parallel without changing output.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import constant_cap, states, variable_cap
from .model import ScenarioError, ScenarioParams, SolverLimitError

MODES = ("variable", "constant")

# Parameters sweepable per mode: capacity is meaningless when it is chosen
# each period, and the capacity cost is a constant offset when capacity is
# fixed.
SWEEPABLE = {
    "variable": ("r1", "w", "l", "h", "n", "c_a", "alpha", "m", "lambda",
                 "u", "c", "p"),
    "constant": ("r1", "w", "l", "h", "n", "c_a", "alpha", "m", "lambda",
                 "u", "p", "s"),
}

SWEEP_CSV_HEADER = ("param", "value", "profit_aware", "profit_naive",
                    "voi_pct", "policy_aware", "policy_naive", "omega",
                    "method", "skipped")

MAX_REJECTIONS = 10_000
# Sweeps fall back from the exact fixed-capacity solver to the grid
# recursion above this horizon.
SWEEP_EXACT_HORIZON = 20
SWEEP_GRID_SIZE = 2001


def _draw_param(rng: np.random.Generator, name: str, mode: str,
                l_level: float, cap_cost: float, market_size: float) -> float:
    """One draw of a single parameter from its experiment range."""
    if name == "r1":
        return rng.uniform(0.0, 1.0)
    if name == "w":
        return rng.uniform(0.0, 1.0)
    if name == "l":
        return rng.uniform(0.0, 1.0)
    if name == "h":
        return rng.uniform(l_level, 1.0)
    if name == "n":
        hi = 50.0 if mode == "variable" else 25.0
        return float(round(rng.uniform(5.0, hi)))
    if name == "c_a":
        return rng.uniform(1.0, 1000.0)
    if name == "alpha":
        return rng.uniform(0.0, 10.0)
    if name == "m":
        return rng.uniform(5.0, 40.0)
    if name == "lambda":
        return rng.uniform(500.0, 2500.0)
    if name == "u":
        return rng.uniform(0.0, 5.0)
    if name == "c":
        return rng.uniform(0.0, 10.0)
    if name == "p":
        return rng.uniform(cap_cost, 25.0)
    if name == "s":
        return rng.uniform(1.0, market_size)
    raise ValueError(f"unknown parameter {name!r}")


def sample_params(seed: int, mode: str) -> ScenarioParams:
    """Draw a full random scenario; rejects draws violating the invariants.

    Deterministic given the seed: the generator (PCG64) and the draw order
    are fixed. Gives up with a diagnostic after MAX_REJECTIONS rejected
    draws.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(MAX_REJECTIONS):
        r1 = _draw_param(rng, "r1", mode, 0, 0, 0)
        w = _draw_param(rng, "w", mode, 0, 0, 0)
        l_level = _draw_param(rng, "l", mode, 0, 0, 0)
        h_level = _draw_param(rng, "h", mode, l_level, 0, 0)
        horizon = int(_draw_param(rng, "n", mode, 0, 0, 0))
        ad_cost = _draw_param(rng, "c_a", mode, 0, 0, 0)
        alpha = _draw_param(rng, "alpha", mode, 0, 0, 0)
        rep_value = _draw_param(rng, "m", mode, 0, 0, 0)
        market = _draw_param(rng, "lambda", mode, 0, 0, 0)
        reservation = _draw_param(rng, "u", mode, 0, 0, 0)
        cap_cost = _draw_param(rng, "c", mode, 0, 0, 0)
        price = _draw_param(rng, "p", mode, 0, 0, cap_cost)
        capacity = (_draw_param(rng, "s", mode, 0, 0, market)
                    if mode == "constant" else None)
        try:
            return ScenarioParams(
                r1=r1, l_level=l_level, h_level=h_level, alpha=alpha, w=w,
                market_size=market, cap_cost=cap_cost, rep_value=rep_value,
                reservation=reservation, price=price, ad_cost=ad_cost,
                horizon=horizon, capacity=capacity)
        except ScenarioError:
            continue
    raise SolverLimitError(
        f"gave up drawing a valid scenario after {MAX_REJECTIONS} rejections")


def voi(profit_aware: float, profit_naive: float) -> float:
    """Percentage value of information between the two firms' profits.

    Negative profits are treated as zero (a firm would not operate at a
    loss), and the result is pinned to [0, 100].
    """
    aware = max(0.0, profit_aware)
    naive = max(0.0, profit_naive)
    if aware == 0.0:
        return 0.0
    return min(100.0, max(0.0, (aware - naive) / aware * 100.0))


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep around a fixed base scenario."""

    base: ScenarioParams
    param_name: str
    samples: int
    seed: int
    mode: str

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ScenarioError(f"mode must be one of {MODES}")
        if self.param_name not in SWEEPABLE[self.mode]:
            raise ScenarioError(
                f"parameter {self.param_name!r} not sweepable in "
                f"{self.mode} mode")
        if self.samples < 1:
            raise ScenarioError("samples must be positive")
        if self.mode == "variable" and self.base.capacity is not None:
            raise ScenarioError("variable-mode base must not fix capacity")
        if (self.mode == "constant" and self.base.capacity is None
                and self.param_name != "s"):
            raise ScenarioError("constant-mode base must fix capacity")


@dataclass(frozen=True)
class SweepRow:
    param_name: str
    param_value: float
    profit_aware: Optional[float]
    profit_naive: Optional[float]
    voi_pct: Optional[float]
    policy_aware: str
    policy_naive: str
    omega: str
    method: str
    skipped: str


def _with_value(base: ScenarioParams, name: str, value: float) -> ScenarioParams:
    field = {"r1": "r1", "w": "w", "l": "l_level", "h": "h_level",
             "alpha": "alpha", "m": "rep_value", "lambda": "market_size",
             "u": "reservation", "c": "cap_cost", "p": "price",
             "c_a": "ad_cost", "s": "capacity"}.get(name)
    if field is not None:
        return replace(base, **{field: value})
    if name == "n":
        return replace(base, horizon=int(round(value)))
    raise ValueError(f"unknown parameter {name!r}")


def solve_row(spec: SweepSpec, index: int) -> SweepRow:
    """Draw and solve one sweep row; failures are recorded, never raised."""
    rng = np.random.Generator(np.random.PCG64(spec.seed ^ index))
    value = _draw_param(rng, spec.param_name, spec.mode,
                        spec.base.l_level, spec.base.cap_cost,
                        spec.base.market_size)
    try:
        params = _with_value(spec.base, spec.param_name, value)
    except ScenarioError as exc:
        return SweepRow(spec.param_name, value, None, None, None, "", "", "",
                        "", f"invariant: {exc}")
    try:
        if spec.mode == "variable":
            aware = variable_cap.solve_aware_variable(params)
            naive = variable_cap.solve_naive_variable(params)
            omega_tag = ""
            method = "switching"
        else:
            if params.horizon <= SWEEP_EXACT_HORIZON:
                aware = constant_cap.solve_aware_constant_exact(params)
                method = "exact"
            else:
                aware = constant_cap.solve_aware_constant_grid(
                    params, SWEEP_GRID_SIZE)
                method = "grid"
            naive = constant_cap.solve_naive_constant(params)
            omega_tag = states.omega(params).tag()
    except SolverLimitError as exc:
        return SweepRow(spec.param_name, value, None, None, None, "", "", "",
                        "", f"solver: {exc}")
    return SweepRow(
        param_name=spec.param_name, param_value=value,
        profit_aware=aware.total_profit, profit_naive=naive.total_profit,
        voi_pct=voi(aware.total_profit, naive.total_profit),
        policy_aware=str(aware.policy), policy_naive=str(naive.policy),
        omega=omega_tag, method=method, skipped="")


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """All rows of a sweep, sorted by parameter value.

    With ``workers`` > 1 rows are solved in parallel processes; per-row
    seeds are derived from the spec seed, so serial and parallel runs
    produce identical rows.
    """
    indices = range(spec.samples)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(solve_row, [spec] * spec.samples, indices))
    else:
        rows = [solve_row(spec, i) for i in indices]
    rows.sort(key=lambda row: row.param_value)
    return rows


def format_real(x: float) -> str:
    return f"{x:.9g}"


def sweep_rows_to_csv(rows: list[SweepRow]) -> str:
    """Render sweep rows as CSV text (stable byte-for-byte for equal rows)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for row in rows:
        writer.writerow((
            row.param_name,
            format_real(row.param_value),
            "" if row.profit_aware is None else format_real(row.profit_aware),
            "" if row.profit_naive is None else format_real(row.profit_naive),
            "" if row.voi_pct is None else format_real(row.voi_pct),
            row.policy_aware,
            row.policy_naive,
            row.omega,
            row.method,
            row.skipped,
        ))
    return buf.getvalue()


def write_sweep_csv(rows: list[SweepRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(sweep_rows_to_csv(rows))


def read_sweep_csv(path) -> list[dict]:
    """Parse a sweep CSV back into dict rows (strings preserved)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != SWEEP_CSV_HEADER:
            raise ValueError(
                f"unexpected sweep CSV header: {reader.fieldnames}")
        return list(reader)
