"""Advertisement and capacity planning under reputation-driven demand."""

__version__ = "0.1.0"

from .model import (AdLevel, AdPolicy, PeriodRecord, ScenarioError,
                    ScenarioParams, SolverLimitError, Trajectory, demand,
                    fixed_capacity, match_demand, period_profit,
                    post_ad_reputation, simulate, wom_update)
from .states import MarketState, OmegaSet, StateThresholds, classify_state, omega
from .thresholds import (ConstantThresholds, VariableThresholds,
                         constant_ad_rule, constant_thresholds, root_solve,
                         variable_ad_rule, variable_thresholds)
from .variable_cap import (SolveMethod, SolveResult, check_capacity_optimality,
                           exhaustive_variable, solve_aware_variable,
                           solve_naive_variable)
from .constant_cap import (NodeCapExceeded, Prop5Report, lemma1_upper_bound,
                           prop4_applies, prop5_check,
                           solve_aware_constant_exact,
                           solve_aware_constant_grid, solve_naive_constant)
from .experiments import SweepRow, SweepSpec, run_sweep, sample_params, voi

__all__ = [name for name in dir() if not name.startswith("_")]
