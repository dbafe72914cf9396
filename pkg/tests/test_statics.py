import math

import numpy as np
import pytest

from cwwr.errors import MultipleRootsError
from cwwr.simplex import AprioriParams, Measure3, ModelParams, XmCoords, from_xm, to_xm
from cwwr.statics import (
    amplitude_reference,
    critical_beta,
    exponent_beta,
    exponent_field,
    free_energy,
    hessian_classify,
    magnetization_of_beta,
    maximizers,
    pressure,
    pressure_xm,
    splitting_beta,
    stationarity_residual,
    stationary_beta,
    stationary_measure,
    stationary_points,
    stationary_x,
    symmetric_fixed_point,
    symmetric_stationary_points,
)

UNIFORM = Measure3.uniform()
BETA_C = 2.0 + math.e


def symmetric_alpha(q):
    return Measure3(1.0 / (2.0 + q), q / (2.0 + q), 1.0 / (2.0 + q))


APRIORI_SET = [
    AprioriParams(0.0, math.log(2.0)),       # uniform
    AprioriParams(0.0, math.log(0.5)),       # hole-rich symmetric
    AprioriParams(0.3, math.log(2.0)),       # tilted
    AprioriParams(-0.8, 0.7),                # opposite tilt
    AprioriParams(0.05, -1.2),               # weakly tilted, hole-rich
]


class TestFreeEnergy:
    def test_vanishes_at_alpha_without_interaction(self):
        alpha = Measure3(0.2, 0.5, 0.3)
        assert free_energy(alpha, ModelParams(0.0, alpha)) == pytest.approx(0.0, abs=1e-15)

    def test_uniform_value(self):
        val = free_energy(UNIFORM, ModelParams(7.3, UNIFORM))
        assert val == pytest.approx(-7.3 / 9.0, abs=1e-14)

    def test_boundary_measure_allowed(self):
        val = free_energy(Measure3(0.5, 0.0, 0.5), ModelParams(1.0, UNIFORM))
        assert math.isfinite(val)


class TestStationarity:
    def test_zero_at_alpha_without_interaction(self):
        alpha = Measure3(0.25, 0.45, 0.30)
        r1, r2 = stationarity_residual(alpha, ModelParams(0.0, alpha))
        assert abs(r1) < 1e-14 and abs(r2) < 1e-14

    def test_critical_fixed_point(self):
        nu = Measure3(1.0 / (math.e + 2.0), math.e / (math.e + 2.0), 1.0 / (math.e + 2.0))
        r1, r2 = stationarity_residual(nu, ModelParams(BETA_C, UNIFORM))
        assert abs(r1) < 1e-10 and abs(r2) < 1e-10

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            stationarity_residual(Measure3(0.0, 0.5, 0.5), ModelParams(1.0, UNIFORM))


class TestSymmetricFixedPoint:
    def test_uniform_at_zero_coupling(self):
        nu = symmetric_fixed_point(0.0, 1.0)
        assert nu.distance(UNIFORM) < 1e-12

    def test_critical_value(self):
        nu = symmetric_fixed_point(BETA_C, 1.0)
        assert nu.p_plus == pytest.approx(1.0 / (math.e + 2.0), abs=1e-12)

    def test_decreasing_in_beta(self):
        values = [symmetric_fixed_point(b, 1.0).p_plus for b in np.linspace(0.0, 12.0, 40)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_upper_bound(self):
        for q in (0.3, 1.0, 4.0):
            for b in (0.5, 2.0, 9.0):
                assert symmetric_fixed_point(b, q).p_plus < 1.0 / (2.0 + q)

    def test_attractive_multiplicity_reported(self):
        alpha0 = 0.982013790037908442  # equal-height hole mass at beta = -16
        q = 2.0 * alpha0 / (1.0 - alpha0)
        with pytest.raises(MultipleRootsError) as exc:
            symmetric_fixed_point(-16.0, q)
        assert len(exc.value.roots) == 3


class TestHessianClassify:
    def test_degenerate_at_critical(self):
        nu = symmetric_fixed_point(BETA_C, 1.0)
        assert hessian_classify(nu, ModelParams(BETA_C, UNIFORM)) == "degenerate"

    def test_saddle_above_critical(self):
        nu = symmetric_fixed_point(6.0, 1.0)
        assert hessian_classify(nu, ModelParams(6.0, UNIFORM)) == "saddle"

    def test_maximum_below_critical(self):
        nu = symmetric_fixed_point(3.0, 1.0)
        assert hessian_classify(nu, ModelParams(3.0, UNIFORM)) == "maximum"

    def test_rejects_non_stationary(self):
        with pytest.raises(ValueError):
            hessian_classify(Measure3(0.5, 0.3, 0.2), ModelParams(3.0, UNIFORM))


class TestCriticalBeta:
    def test_ising_limit(self):
        assert critical_beta(0.0) == 2.0

    def test_uniform(self):
        assert critical_beta(1.0) == pytest.approx(2.0 + math.e, abs=1e-15)

    def test_splitting_detection(self):
        assert splitting_beta(1.0) == pytest.approx(2.0 + math.e, abs=1e-4)


class TestClosedSolution:
    def test_symmetric_limit_is_critical_beta(self):
        a = AprioriParams(0.0, math.log(2.0))  # q = 1
        assert stationary_beta(1e-6, a) == pytest.approx(BETA_C, abs=1e-4)
        assert stationary_x(1e-6, a) == pytest.approx(2.0 / (2.0 + math.e), abs=1e-4)

    def test_limits_general_hole_ratio(self):
        for q in (0.4, 2.5):
            a = AprioriParams(0.0, math.log(2.0 / q))
            assert stationary_beta(1e-7, a) == pytest.approx(2.0 + q * math.e, rel=1e-5)
            assert stationary_x(1e-7, a) == pytest.approx(2.0 / (2.0 + q * math.e), rel=1e-5)

    def test_negative_branch_for_positive_field(self):
        a = AprioriParams(0.4, math.log(2.0))
        m_root = (math.exp(0.8) - 1.0) / (math.exp(0.8) + 1.0)
        inside = np.linspace(1e-4, m_root - 1e-6, 50)
        assert np.all(stationary_beta(inside, a) < 0.0)
        assert stationary_beta(m_root, a) == pytest.approx(0.0, abs=1e-10)
        assert stationary_beta(m_root + 1e-5, a) > 0.0

    def test_positive_on_negative_branch(self):
        for a in (AprioriParams(0.3, 0.2), AprioriParams(0.7, -0.5)):
            grid = np.linspace(-1.0 + 1e-6, -1e-6, 1000)
            assert np.all(stationary_beta(grid, a) > 0.0)

    @pytest.mark.parametrize("a", APRIORI_SET)
    def test_stationarity_of_curve(self, a):
        # every curve sample solves the first-order conditions
        for m in np.linspace(-0.95, 0.95, 100):
            if abs(m) < 1e-3:
                continue
            beta = stationary_beta(m, a)
            nu = stationary_measure(m, a)
            r1, r2 = stationarity_residual(nu, ModelParams(beta, a.to_measure()))
            assert max(abs(r1), abs(r2)) < 1e-8

    def test_monotone_and_even_for_symmetric(self):
        a = AprioriParams(0.0, math.log(2.0))
        m = np.linspace(1e-4, 1.0 - 1e-6, 1000)
        vals = stationary_beta(m, a)
        assert np.all(np.diff(vals) > 0.0)
        assert np.allclose(stationary_beta(-m, a), vals, rtol=1e-12)

    def test_rejects_zero_magnetization(self):
        with pytest.raises(ValueError):
            stationary_beta(0.0, AprioriParams(0.0, 0.5))


class TestMaximizers:
    def test_zero_coupling_unique(self):
        alpha = Measure3(0.3, 0.3, 0.4)
        tops = maximizers(ModelParams(0.0, alpha))
        assert len(tops) == 1
        assert tops[0].nu.distance(alpha) < 1e-9

    def test_below_critical_single_symmetric(self):
        tops = maximizers(ModelParams(3.0, UNIFORM))
        assert len(tops) == 1
        assert abs(tops[0].magnetization) < 1e-10

    def test_above_critical_symmetric_pair(self):
        tops = maximizers(ModelParams(6.0, UNIFORM))
        assert len(tops) == 2
        m1, m2 = sorted(p.magnetization for p in tops)
        assert m1 == pytest.approx(-m2, abs=1e-9)
        assert abs(tops[0].value - tops[1].value) < 1e-10
        xs = [to_xm(p.nu).x for p in tops]
        assert xs[0] == pytest.approx(xs[1], abs=1e-9)

    def test_symmetric_saddle_listed_above_critical(self):
        kinds = {p.kind for p in stationary_points(ModelParams(6.0, UNIFORM))}
        assert "saddle" in kinds and "maximum" in kinds

    def test_count_flips_exactly_at_critical(self):
        for q in (0.5, 1.0):
            alpha = symmetric_alpha(q)
            below = maximizers(ModelParams(critical_beta(q) - 1e-3, alpha))
            above = maximizers(ModelParams(critical_beta(q) + 1e-3, alpha))
            assert len(below) == 1 and len(above) == 2


class TestPressure:
    def test_zero_coupling(self):
        for alpha in (UNIFORM, Measure3(0.1, 0.6, 0.3)):
            assert pressure(ModelParams(0.0, alpha), grid=150) == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("beta", [-16.0, -4.0, 0.0, 2.0, BETA_C, 6.0])
    @pytest.mark.parametrize(
        "alpha", [UNIFORM, Measure3(0.3, 0.3, 0.4), Measure3(0.25, 0.5, 0.25)]
    )
    def test_dual_formula_identity(self, beta, alpha):
        params = ModelParams(beta, alpha)
        assert abs(pressure(params, grid=200) - pressure_xm(params, grid=200)) < 1e-8

    def test_equal_height_pair_on_maxwell_line(self):
        alpha0 = 1.0 / (math.exp(-4.0) + 1.0)
        params = ModelParams(-16.0, Measure3.symmetric(alpha0))
        from cwwr.statics import pressure_maximization

        value, args = pressure_maximization(params, grid=400)
        assert len(args) == 2
        x1, x2 = sorted(to_xm(nu).x for nu in args)
        assert x1 == pytest.approx(1.0 - x2, abs=1e-7)
        vals = [free_energy(nu, params) for nu in args]
        assert abs(vals[0] - vals[1]) < 1e-10


class TestExponents:
    def test_magnetization_inverse_consistency(self):
        a = AprioriParams(0.0, math.log(2.0))
        for delta in (1e-3, 1e-2):
            m = magnetization_of_beta(BETA_C + delta, a)
            assert stationary_beta(m, a) == pytest.approx(BETA_C + delta, abs=1e-10)

    def test_magnetization_exponent_and_amplitude(self):
        fit = exponent_beta(1.0)
        assert fit.slope == pytest.approx(0.5, abs=0.02)
        assert fit.amplitude == pytest.approx(amplitude_reference(1.0), rel=0.02)

    def test_amplitude_reference_value(self):
        # series coefficient of the closed solution: beta - beta_c = (2/3 + qe/6) m^2
        assert amplitude_reference(1.0) == pytest.approx(6.0 / (4.0 + math.e), abs=1e-15)

    def test_amplitude_against_grid_maximization(self):
        from cwwr.statics import pressure_maximization

        delta = 1e-3
        _, args = pressure_maximization(
            ModelParams(BETA_C + delta, UNIFORM), grid=600
        )
        m = max(to_xm(nu).m for nu in args)
        assert m * m / delta == pytest.approx(amplitude_reference(1.0), rel=5e-3)

    def test_curie_weiss_quadratic_limit(self):
        # (2 I'(m)/m - 2)/m^2 -> 2/3, the zero-hole-ratio reduction
        m = np.array([1e-3, 5e-4, 2e-4])
        vals = (2.0 * np.arctanh(m) / m - 2.0) / m**2
        assert vals[-1] == pytest.approx(2.0 / 3.0, rel=1e-5)

    def test_field_exponent(self):
        fit = exponent_field(1.0)
        assert fit.slope == pytest.approx(1.0 / 3.0, abs=0.02)

    def test_field_response_monotone(self):
        fit = exponent_field(1.0)
        assert all(a < b for a, b in zip(fit.magnetizations, fit.magnetizations[1:]))

    def test_continuity_off_criticality(self):
        a = AprioriParams(0.0, math.log(2.0))
        m_sym = magnetization_of_beta(6.0, a)
        for h in (1e-7, 1e-9):
            m_h = magnetization_of_beta(6.0, AprioriParams(h, math.log(2.0)))
            assert m_h == pytest.approx(m_sym, abs=1e-4)
