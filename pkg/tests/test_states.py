"""State classification, threshold geometry, and the observable-state set."""

import dataclasses
import math

import pytest

from womcap import ScenarioParams
from womcap.model import EPS
from womcap.states import (LEGAL_OMEGA_SETS, MarketState, OmegaSet,
                           classify_state, classify_state_by_demand, omega,
                           thresholds)

from conftest import draw_many, make_rng


def finite_in_unit(values):
    return [v for v in values if math.isfinite(v) and 0.0 <= v <= 1.0]


def sampled_states(p, min_width=4 * EPS):
    """Image of classify_state over [0, 1] at the classifier's resolution."""
    th = thresholds(p)
    pts = {0.0, 1.0}
    pts.update(finite_in_unit((th.x1, th.x2, th.y1, th.y2)))
    b = sorted(pts)
    samples = set(b)
    for lo, hi in zip(b, b[1:]):
        if hi - lo > min_width:
            samples.add((lo + hi) / 2)
    return frozenset(classify_state(p, r, th) for r in samples)


def state_interval_width(p, state):
    """Width of the state's reputation interval clipped to [0, 1]."""
    th = thresholds(p)
    lo, hi = {
        MarketState.A: (th.x1, 1.0),
        MarketState.B: (max(th.x2, th.y1), th.x1),
        MarketState.C: (th.y1, th.x2),
        MarketState.D: (th.x2, min(th.y1, th.x1)),
        MarketState.E: (th.y2, min(th.x2, th.y1)),
        MarketState.F: (0.0, th.y2),
    }[state]
    return min(hi, 1.0) - max(lo, 0.0)


class TestThresholds:
    def test_small_capacity_limit(self):
        p = draw_many(41, "constant", 1)[0]
        tiny = dataclasses.replace(p, capacity=1e-9)
        th = thresholds(tiny)
        assert th.x1 == pytest.approx(th.y1, abs=1e-9)
        assert th.x2 == pytest.approx(th.y2, abs=1e-9)

    def test_zero_capacity_makes_saturation_universal(self):
        p = dataclasses.replace(draw_many(42, "constant", 1)[0], capacity=0.0)
        th = thresholds(p)
        assert th.x1 == -math.inf and th.x2 == -math.inf
        assert classify_state(p, 0.0) is MarketState.A

    def test_capacity_at_market_size_excludes_saturation(self):
        p = draw_many(43, "constant", 1)[0]
        q = dataclasses.replace(p, capacity=p.market_size)
        th = thresholds(q)
        assert th.x1 == math.inf and th.x2 == math.inf

    def test_demand_onset_zero_when_low_lift_matches_cutoff(self):
        k = 12.0 / 30.0
        p = ScenarioParams(r1=0.5, l_level=k ** 0.5, h_level=0.9, alpha=2.0,
                           w=0.5, market_size=1000, cap_cost=1.0,
                           rep_value=30.0, reservation=2.0, price=10.0,
                           ad_cost=50.0, horizon=5, capacity=400.0)
        assert thresholds(p).y1 == pytest.approx(0.0, abs=1e-12)

    def test_ordering_on_meaningful_instances(self):
        for p in draw_many(44, "constant", 300):
            th = thresholds(p)
            assert th.y1 >= th.y2
            if math.isfinite(th.x1) and th.x1 < 1.0:
                assert th.x1 >= th.x2
                assert th.x1 >= th.y1 and th.x2 >= th.y2


class TestClassify:
    def test_above_x1_is_saturated(self):
        for p in draw_many(45, "constant", 50):
            th = thresholds(p)
            if math.isfinite(th.x1) and 0.0 <= th.x1 <= 1.0 - 1e-6:
                assert classify_state(p, min(1.0, th.x1 + 1e-6)) is MarketState.A

    def test_below_y2_is_dead(self):
        for p in draw_many(46, "constant", 50):
            th = thresholds(p)
            if 1e-6 <= th.y2 <= 1.0:
                assert classify_state(p, max(0.0, th.y2 - 1e-6)) is MarketState.F

    def test_dual_path_agreement(self):
        rng = make_rng(47)
        for p in draw_many(48, "constant", 2500):
            for r in rng.uniform(0, 1, 4):
                assert classify_state(p, float(r)) is \
                    classify_state_by_demand(p, float(r))

    def test_step_function_breakpoints(self):
        # The classification changes only at the finite thresholds in [0, 1].
        for p in draw_many(49, "constant", 100):
            th = thresholds(p)
            breaks = sorted(set(finite_in_unit((th.x1, th.x2, th.y1, th.y2))))
            cuts = [0.0] + breaks + [1.0]
            for lo, hi in zip(cuts, cuts[1:]):
                if hi - lo < 1e-6:
                    continue
                probes = [lo + (hi - lo) * frac
                          for frac in (0.25, 0.5, 0.75)]
                labels = {classify_state(p, r) for r in probes}
                assert len(labels) == 1


class TestOmega:
    def test_always_legal(self):
        for p in draw_many(50, "constant", 1000):
            assert omega(p).states in LEGAL_OMEGA_SETS

    def test_illegal_set_rejected(self):
        with pytest.raises(ValueError, match="illegal"):
            OmegaSet(frozenset({MarketState.C, MarketState.F}))

    def test_matches_sampled_image(self):
        hard = 0
        for p in draw_many(51, "constant", 2000):
            om = omega(p).states
            image = sampled_states(p)
            if image == om:
                continue
            # The case list works in exact arithmetic; a state whose interval
            # is narrower than the boundary collar cannot be sampled.
            if image <= om and all(state_interval_width(p, s) <= 4 * EPS
                                   for s in om - image):
                continue
            hard += 1
        assert hard == 0

    def test_reference_alpha_rows(self, constant_alpha_table_base):
        low = dataclasses.replace(constant_alpha_table_base, alpha=0.22)
        assert omega(low).tag() == "AB"
        mid = dataclasses.replace(constant_alpha_table_base, alpha=2.57)
        assert omega(mid).tag() == "ABCEF"

    def test_closure_properties(self):
        for p in draw_many(52, "constant", 800):
            th = thresholds(p)
            om = omega(p).states
            if th.y1 > th.x2:
                assert MarketState.A in om
            else:
                if om & {MarketState.E, MarketState.F}:
                    assert MarketState.C in om
                if MarketState.B in om:
                    assert MarketState.A in om

    def test_zero_capacity_is_all_saturated(self):
        p = dataclasses.replace(draw_many(53, "constant", 1)[0], capacity=0.0)
        assert omega(p).tag() == "A"
