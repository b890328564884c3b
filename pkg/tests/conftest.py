"""Shared instances and seeded random-draw helpers."""

import dataclasses

import numpy as np
import pytest

from womcap import ScenarioParams
from womcap.experiments import sample_params


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def draw_many(seed, mode, count, max_horizon=None):
    """Deterministic batch of random scenarios, optionally horizon-clamped."""
    rng = make_rng(seed)
    out = []
    for _ in range(count):
        p = sample_params(int(rng.integers(0, 2 ** 62)), mode)
        if max_horizon is not None and p.horizon > max_horizon:
            p = dataclasses.replace(
                p, horizon=int(rng.integers(5, max_horizon + 1)))
        out.append(p)
    return out


@pytest.fixture(scope="session")
def cycling_instance():
    """Tight capacity plus near-total word-of-mouth: myopic play cycles."""
    return ScenarioParams(
        r1=0.18, l_level=0.68, h_level=0.82, alpha=6.04, w=0.99,
        market_size=653, cap_cost=0.70, rep_value=39.22, reservation=2.70,
        price=16.13, ad_cost=731.85, horizon=18, capacity=88)


@pytest.fixture(scope="session")
def alpha_sweep_base():
    """Variable-capacity base instance for advertisement-resistance sweeps."""
    return ScenarioParams(
        r1=0.57, l_level=0.28, h_level=0.36, alpha=5.33, w=0.85,
        market_size=1528, cap_cost=0.33, rep_value=37.03, reservation=2.76,
        price=18.25, ad_cost=623.22, horizon=29)


@pytest.fixture(scope="session")
def r1_table_base():
    """Variable-capacity base instance for starting-reputation sweeps."""
    return ScenarioParams(
        r1=0.70, l_level=0.09, h_level=0.66, alpha=7.12, w=0.02,
        market_size=971, cap_cost=7.69, rep_value=29.11, reservation=1.61,
        price=13.37, ad_cost=875.30, horizon=7)


@pytest.fixture(scope="session")
def constant_alpha_table_base():
    """Fixed-capacity base instance for advertisement-resistance sweeps."""
    return ScenarioParams(
        r1=0.01, l_level=0.53, h_level=0.79, alpha=2.57, w=0.42,
        market_size=1451, cap_cost=6.30, rep_value=28.57, reservation=0.37,
        price=15.52, ad_cost=829.40, horizon=11, capacity=587)
