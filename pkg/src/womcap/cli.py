"""Command-line entry point.

Subcommands: solve, classify, check, sweep, trajectory, thresholds. Exit
codes: 0 success, 1 usage error, 2 scenario-invariant violation, 3 solver
resource exhaustion. All errors are a single ``error: <message>`` line on
standard error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__, constant_cap, experiments, states, thresholds, variable_cap
from .model import AdPolicy, ScenarioError, SolverLimitError, \
    fixed_capacity, match_demand, simulate
from .scenario_io import (format_real, read_scenario, write_trajectory_csv)


class _Parser(argparse.ArgumentParser):
    """argparse with the package's exit-code and error-line conventions."""

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="womcap", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"womcap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="compute an optimal policy")
    solve.add_argument("--mode", required=True,
                       choices=("variable", "constant"))
    solve.add_argument("--firm", required=True,
                       choices=("aware", "naive", "exhaustive"))
    solve.add_argument("--scenario", required=True)
    group = solve.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true",
                       help="force the exact fixed-capacity solver")
    group.add_argument("--grid", type=int, metavar="G",
                       help="grid size for the approximate solver")
    solve.add_argument("--node-cap", type=int,
                       default=constant_cap.DEFAULT_NODE_CAP)
    solve.add_argument("--out", help="write the trajectory CSV here")

    classify = sub.add_parser("classify",
                              help="state thresholds and observable states")
    classify.add_argument("--scenario", required=True)
    classify.add_argument("--r", type=float,
                          help="also classify this reputation")

    check = sub.add_parser("check",
                           help="structural screens for a fixed capacity")
    check.add_argument("--scenario", required=True)

    sweep = sub.add_parser("sweep", help="one-parameter sweep to CSV")
    sweep.add_argument("--mode", required=True,
                       choices=("variable", "constant"))
    sweep.add_argument("--param", required=True)
    sweep.add_argument("--samples", type=int, required=True)
    sweep.add_argument("--seed", type=int, required=True)
    sweep.add_argument("--scenario", required=True)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--workers", type=int, default=1)

    traj = sub.add_parser("trajectory",
                          help="simulate an explicit policy string")
    traj.add_argument("--scenario", required=True)
    traj.add_argument("--policy", required=True,
                      help="one H or L per period, e.g. HHLLL")
    traj.add_argument("--mode", choices=("variable", "constant"),
                      help="default: constant when the scenario fixes s")
    traj.add_argument("--out", help="write the trajectory CSV here")

    thresh = sub.add_parser(
        "thresholds", aliases=["classify-thresholds"],
        help="print the myopic decision thresholds")
    thresh.add_argument("--scenario", required=True)
    return parser


def _fmt_threshold(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "undefined"
    return format_real(value)


def _summary(result) -> str:
    return f"profit={format_real(result.total_profit)} policy={result.policy}"


def _cmd_solve(args) -> int:
    params = read_scenario(args.scenario)
    if args.mode == "variable":
        if params.capacity is not None:
            raise ScenarioError(
                "scenario fixes capacity 's' but --mode variable requires "
                "per-period capacity")
        if args.exact or args.grid:
            raise _UsageError("--exact/--grid apply to --mode constant only")
        solver = {
            "aware": variable_cap.solve_aware_variable,
            "naive": variable_cap.solve_naive_variable,
            "exhaustive": variable_cap.exhaustive_variable,
        }[args.firm]
        result = solver(params)
    else:
        if params.capacity is None:
            raise ScenarioError(
                "scenario must fix capacity 's' for --mode constant")
        if args.firm == "naive":
            result = constant_cap.solve_naive_constant(params)
        elif args.firm == "exhaustive":
            raise _UsageError("--firm exhaustive applies to --mode variable")
        elif args.grid:
            result = constant_cap.solve_aware_constant_grid(params, args.grid)
        elif args.exact or params.horizon <= constant_cap.EXACT_HORIZON_CAP:
            result = constant_cap.solve_aware_constant_exact(
                params, node_cap=args.node_cap)
        else:
            result = constant_cap.solve_aware_constant_grid(params)
    if args.out:
        write_trajectory_csv(result.trajectory, args.out)
    print(_summary(result))
    return 0


def _cmd_classify(args) -> int:
    params = read_scenario(args.scenario)
    if params.capacity is None:
        raise ScenarioError(
            "scenario must fix capacity 's' for classification")
    th = states.thresholds(params)
    for name in ("x1", "x2", "y1", "y2"):
        print(f"{name} = {_fmt_threshold(getattr(th, name))}")
    print(f"omega = {states.omega(params).tag()}")
    if args.r is not None:
        print(f"state = {states.classify_state(params, args.r, th)}")
    return 0


def _cmd_check(args) -> int:
    params = read_scenario(args.scenario)
    if params.capacity is None:
        raise ScenarioError("scenario must fix capacity 's' for check")
    p4 = constant_cap.prop4_applies(params)
    p5 = constant_cap.prop5_check(params).applicable
    try:
        bound = str(constant_cap.lemma1_upper_bound(params))
    except ValueError:
        bound = "n/a"
    print(f"prop4={str(p4).lower()} prop5={str(p5).lower()} "
          f"lemma1_bound={bound}")
    return 0


def _cmd_sweep(args) -> int:
    params = read_scenario(args.scenario)
    spec = experiments.SweepSpec(base=params, param_name=args.param,
                                 samples=args.samples, seed=args.seed,
                                 mode=args.mode)
    rows = experiments.run_sweep(spec, workers=args.workers)
    experiments.write_sweep_csv(rows, args.out)
    skipped = sum(1 for row in rows if row.skipped)
    print(f"rows={len(rows)} skipped={skipped} out={args.out}")
    return 0


def _cmd_trajectory(args) -> int:
    params = read_scenario(args.scenario)
    mode = args.mode or ("constant" if params.capacity is not None
                         else "variable")
    if mode == "constant":
        if params.capacity is None:
            raise ScenarioError(
                "scenario must fix capacity 's' for --mode constant")
        rule = fixed_capacity(params.capacity)
    else:
        rule = match_demand()
    policy = AdPolicy.from_string(args.policy)
    if len(policy) != params.horizon:
        raise _UsageError(
            f"policy length {len(policy)} != horizon {params.horizon}")
    traj = simulate(params, policy, rule)
    if args.out:
        write_trajectory_csv(traj, args.out)
    print(f"profit={format_real(traj.total_profit)} policy={policy}")
    return 0


def _cmd_thresholds(args) -> int:
    params = read_scenario(args.scenario)
    vth = thresholds.variable_thresholds(params)
    for name in ("iota", "rho", "kappa", "tau", "nu"):
        print(f"{name} = {_fmt_threshold(getattr(vth, name))}")
    if params.capacity is not None:
        cth = thresholds.constant_thresholds(params)
        for name in ("gamma", "omega", "phi", "beta"):
            print(f"{name} = {_fmt_threshold(getattr(cth, name))}")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "classify": _cmd_classify,
    "check": _cmd_check,
    "sweep": _cmd_sweep,
    "trajectory": _cmd_trajectory,
    "thresholds": _cmd_thresholds,
    "classify-thresholds": _cmd_thresholds,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
