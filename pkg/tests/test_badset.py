import math

import numpy as np
import pytest

from cwwr.badset import (
    axis_is_bad,
    bad_set,
    edge_has_bad_point,
    maxwell_crossings,
    transition_times,
)
from cwwr.dynamics import (
    FINAL_TRANSITION_TIME,
    dynamical_field,
    is_bad,
    symmetric_line_criterion,
    wing_tip_coupling,
)
from cwwr.simplex import Measure3

# frozen after first computation (bisection tolerance 1e-6)
T1_BETA5 = 0.049090
T2_BETA5 = 0.088646
T1_BETA4 = 0.126257
T2_BETA4 = 0.153457


class TestTransitionTimes:
    def test_final_time_exact(self):
        tt = transition_times(5.0)
        assert tt.t3 == math.log(3.0) / 4.0

    def test_low_beta_threshold(self):
        tt = transition_times(2.8)
        assert tt.t1 == pytest.approx(0.313191, abs=1e-6)
        assert tt.t1 == tt.t2
        assert tt.regime == "line_only"
        assert tt.t1 > tt.t3  # the line appears after the tricritical time

    def test_rejects_gibbs_regime(self):
        with pytest.raises(ValueError):
            transition_times(2.0)

    def test_frozen_values_beta5(self):
        tt = transition_times(5.0)
        assert 0.0 < tt.t1 < tt.t2 < tt.t3
        assert tt.t1 == pytest.approx(T1_BETA5, abs=2e-6)
        assert tt.t2 == pytest.approx(T2_BETA5, abs=2e-6)

    def test_frozen_values_beta4(self):
        tt = transition_times(4.0)
        assert tt.t1 == pytest.approx(T1_BETA4, abs=2e-6)
        assert tt.t2 == pytest.approx(T2_BETA4, abs=2e-6)

    def test_scan_agrees_with_tip_condition_near_t1(self):
        # the scanning detector sees the arcs shortly after they appear
        assert not edge_has_bad_point(5.0, T1_BETA5 - 2e-3)
        assert edge_has_bad_point(5.0, T1_BETA5 + 2e-3)


class TestScannerPrimitives:
    def test_no_crossings_at_weak_coupling(self):
        assert maxwell_crossings(0.9, 1.0) == []
        assert maxwell_crossings(2.0, dynamical_field(0.5)) == []

    def test_edge_crossing_at_beta5(self):
        h = dynamical_field(0.05)
        crossings = maxwell_crossings(2.5, h)
        assert len(crossings) == 1
        assert crossings[0] == pytest.approx(0.2045, abs=5e-3)

    def test_axis_tie_is_exact(self):
        assert axis_is_bad(2.5, dynamical_field(0.12))
        assert not axis_is_bad(2.5, dynamical_field(0.05))

    def test_wing_tip_matches_tricritical_coupling(self):
        h_tc = math.atanh(3.0 ** -0.5)
        assert wing_tip_coupling(h_tc) == pytest.approx(1.5, abs=1e-9)


class TestBadSetTopology:
    def test_empty_before_first_transition(self):
        scanned = bad_set(5.0, 0.5 * T1_BETA5, resolution=80)
        assert scanned.topology == "empty"
        assert scanned.points == []

    def test_two_arcs_between_transitions(self):
        scanned = bad_set(5.0, 0.5 * (T1_BETA5 + T2_BETA5), resolution=80)
        assert scanned.topology == "two_arcs"
        assert len(scanned.components) == 2
        assert all(p.p_plus != p.p_minus for p in scanned.points)

    def test_y_shape_between_second_and_final(self):
        scanned = bad_set(5.0, 0.5 * (T2_BETA5 + FINAL_TRANSITION_TIME), resolution=80)
        assert scanned.topology == "y_shaped"
        biases = [p.p_plus - p.p_minus for p in scanned.points]
        assert any(b == 0.0 for b in biases)
        assert any(b != 0.0 for b in biases)

    def test_line_beyond_final_time(self):
        scanned = bad_set(5.0, 0.30, resolution=80)
        assert scanned.topology == "line"
        assert all(p.p_plus == p.p_minus for p in scanned.points)

    def test_line_growth_in_time(self):
        def line_top(t):
            scanned = bad_set(5.0, t, resolution=80)
            assert scanned.topology == "line"
            return max(p.p_zero for p in scanned.points)

        tops = [line_top(t) for t in (0.30, 0.40, 0.55)]
        assert tops[0] < tops[1] < tops[2]

    def test_low_beta_line_threshold(self):
        assert bad_set(2.8, 0.31, resolution=60).topology == "empty"
        scanned = bad_set(2.8, 0.32, resolution=60)
        assert scanned.topology == "line"

    def test_gibbs_regimes_scan_empty(self):
        assert bad_set(2.0, 0.8, resolution=40).topology == "empty"
        assert bad_set(-5.0, 0.8, resolution=40).topology == "empty"

    def test_reflection_symmetry(self):
        scanned = bad_set(5.0, 0.07, resolution=60)
        points = {(round(p.p_minus, 9), round(p.p_plus, 9)) for p in scanned.points}
        mirrored = {(b, a) for a, b in points}
        assert points == mirrored

    def test_every_scanned_point_is_bad(self):
        scanned = bad_set(5.0, 0.07, resolution=40)
        for p in scanned.points:
            assert is_bad(p, 5.0, 0.07)

    def test_second_order_line_matches_closed_criterion(self):
        beta, t, res = 5.0, 0.35, 80
        scanned = bad_set(beta, t, resolution=res)
        axis_alpha0 = sorted(p.p_zero for p in scanned.points)
        threshold = 1.0 - 2.0 / (beta * (1.0 - math.exp(-4.0 * t)))
        # scanned axis cells fill exactly the closed-form interval
        assert axis_alpha0[-1] == pytest.approx(threshold, abs=1.0 / res)
        for alpha0 in np.linspace(0.0, 0.95, 96):
            nu = Measure3.symmetric(float(alpha0))
            assert is_bad(nu, beta, t) == symmetric_line_criterion(nu, beta, t) or (
                abs(alpha0 - threshold) < 1e-9
            )

    def test_rejects_time_zero(self):
        with pytest.raises(ValueError):
            bad_set(5.0, 0.0, resolution=40)
