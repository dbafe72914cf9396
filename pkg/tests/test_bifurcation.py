import math

import numpy as np
import pytest

from cwwr.badset import bad_set
from cwwr.bifurcation import (
    arc_boundary,
    asymmetric_hole_mass,
    atypicality_margin,
    bifurcation_curve,
    crossing_ratio,
    magnetization_ceiling,
    symmetric_minimizer_locus,
    typical_curve,
)
from cwwr.dynamics import FINAL_TRANSITION_TIME
from cwwr.simplex import AprioriParams, Measure3, ModelParams, to_xm
from cwwr.statics import stationary_beta, stationary_x

T3 = FINAL_TRANSITION_TIME


class TestBoundaryCurve:
    def test_points_lie_on_simplex_with_expected_hole_mass(self):
        beta, t = 5.0, 0.07
        curve = bifurcation_curve(beta, t)
        boundary = arc_boundary(beta, t)
        for (_, bias, bt), nu in zip(curve.samples, boundary):
            total = nu.p_minus + nu.p_zero + nu.p_plus
            assert total == pytest.approx(1.0, abs=1e-12)
            assert nu.p_zero == pytest.approx(1.0 - 2.0 * bt / beta, abs=1e-12)
            assert nu.p_plus - nu.p_minus == pytest.approx(
                2.0 * bt * bias / beta, abs=1e-12
            )

    def test_mirror_symmetry(self):
        boundary = arc_boundary(5.0, 0.07)
        mirrored = [p.reflected() for p in boundary]
        for p, q in zip(boundary, mirrored):
            assert p.p_plus == q.p_minus

    def test_entry_point_on_edge_when_curve_exits_simplex(self):
        curve = bifurcation_curve(5.0, 0.07)
        assert curve.ml > 0.0
        first = curve.samples[0]
        assert first[2] == pytest.approx(2.5, abs=1e-9)  # coupling = beta/2

    def test_whole_curve_inside_for_later_times(self):
        curve = bifurcation_curve(5.0, 0.2)
        assert curve.ml == 0.0

    def test_scanned_arcs_sheltered_by_boundary(self):
        beta, t, res = 5.0, 0.07, 60
        scanned = bad_set(beta, t, resolution=res)
        assert scanned.topology == "two_arcs"
        curve = bifurcation_curve(beta, t, n=400)
        # interpolate the boundary bias as a function of hole mass
        holes = np.array([1.0 - 2.0 * bt / beta for _, _, bt in curve.samples])
        biases = np.array([bias for _, bias, _ in curve.samples])
        order = np.argsort(holes)
        top_hole = holes.max()
        for p in scanned.points:
            bias = abs(p.p_plus - p.p_minus) / p.occupied
            assert p.p_zero <= top_hole + 1.0 / res
            bound = np.interp(p.p_zero, holes[order], biases[order])
            assert bias <= bound + 1.0 / res

    def test_rejects_times_outside_arc_regime(self):
        with pytest.raises(ValueError):
            bifurcation_curve(5.0, T3 + 0.01)


class TestTypicalCurve:
    def test_hole_mass_at_zero_magnetization(self):
        for beta in (3.0, 5.0):
            expected = (beta - 2.0) / (beta + 2.0 * (math.e - 1.0))
            assert asymmetric_hole_mass(0.0, beta) == pytest.approx(expected, abs=1e-12)
            tiny = asymmetric_hole_mass(1e-8, beta)
            assert tiny == pytest.approx(expected, abs=1e-6)

    def test_consistency_with_closed_solution(self):
        # alpha0 inverts the stationary curve: plugging it back recovers beta
        beta = 4.0
        for m in (0.1, 0.4, 0.7):
            alpha0 = asymmetric_hole_mass(m, beta)
            a = AprioriParams(0.0, math.log((1.0 - alpha0) / alpha0))
            assert stationary_beta(m, a) == pytest.approx(beta, rel=1e-10)
            assert stationary_x(m, a) == pytest.approx(
                2.0 * math.atanh(m) / (m * beta), rel=1e-10
            )

    def test_ceiling_is_mean_field_magnetization(self):
        beta = 4.0
        m = magnetization_ceiling(beta)
        assert m == pytest.approx(math.tanh(0.5 * beta * m), abs=1e-12)
        assert asymmetric_hole_mass(m - 1e-9, beta) > 0.0

    def test_static_endpoints_reach_zero_holes(self):
        # the curve terminates on the zero-hole edge at the ceiling
        beta = 4.0
        m_max = magnetization_ceiling(beta)
        assert asymmetric_hole_mass(m_max - 1e-10, beta) < 1e-8
        pts = typical_curve(beta, 0.0, n=3001)
        assert pts[0].p_zero < 5e-3 and pts[-1].p_zero < 5e-3

    def test_evolution_contracts_magnetization_keeps_holes(self):
        static = typical_curve(4.0, 0.0, n=101)
        evolved = typical_curve(4.0, 0.3, n=101)
        for p0, pt in zip(static, evolved):
            assert pt.p_zero == pytest.approx(p0.p_zero, abs=1e-12)
            m0 = p0.p_plus - p0.p_minus
            mt = pt.p_plus - pt.p_minus
            assert mt == pytest.approx(m0 * math.exp(-0.6), abs=1e-12)

    def test_symmetric_locus_hole_floor(self):
        for beta in (2.8, 4.0, 5.0):
            locus = symmetric_minimizer_locus(beta)
            floor = 1.0 - 2.0 / beta
            assert all(nu.p_zero >= floor - 1e-9 for nu in locus)
            assert min(nu.p_zero for nu in locus) == pytest.approx(floor, abs=1e-2)


class TestMargin:
    def test_positive_at_visible_bad_set(self):
        margin = atypicality_margin(5.0, 0.2, resolution=100)
        assert 0.0 < margin < 1.0

    def test_infinite_when_empty(self):
        assert atypicality_margin(5.0, 0.01, resolution=60) == math.inf

    def test_line_regime_margin_matches_hole_gap(self):
        beta, t = 4.0, 0.5
        margin = atypicality_margin(beta, t, resolution=150)
        stem_top = 1.0 - 2.0 / (beta * (1.0 - math.exp(-4.0 * t)))
        floor = 1.0 - 2.0 / beta
        gap = floor - stem_top
        assert margin == pytest.approx(gap, abs=0.02)


class TestCrossingRatio:
    def test_bounded_increasing_with_tricritical_limit(self):
        ts = np.linspace(0.004, T3 - 1e-4, 100)
        values = [crossing_ratio(float(t)) for t in ts]
        assert all(v < 1.0 for v in values)
        assert all(a < b for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(2.0 / 3.0, abs=1e-3)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            crossing_ratio(T3 + 0.01)
