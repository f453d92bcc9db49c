import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from elastocap.errors import ConvergenceError, DomainError, FitError, SlopeSignError
from elastocap.potentials import Material
from elastocap.quadrature import QuadratureSpec, graded_breaks, panel_rule
from elastocap.verification import (VariationField, elastic_energy, energy_density,
                                    equilibrium_residual_fd, fit_bound, green_residual,
                                    leading_slope, line_integral_decay, sobolev_diagnostics)
from elastocap.fields import field_arrays

M = Material(1.0, 1.0)
SCHEDULE = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]


def families():
    rng = np.random.default_rng(7)
    return {"bump-polynomial": VariationField.bump_polynomial(rng.normal(size=(2, 6))),
            "bump-times-solution": VariationField.bump_times_solution(M)}


class TestQuadrature:
    def test_half_annulus_area(self):
        q = QuadratureSpec(eps=1e-3)
        _, w = q.polar()
        assert w.sum() == pytest.approx(0.5 * math.pi * (1 - 1e-6), rel=1e-14)

    def test_log_squared_moment(self):
        # int_eps^1 r log(r)**2 dr over the half disc
        q = QuadratureSpec(eps=1e-6)
        z, w = q.polar()
        got = np.sum(w * np.log(np.abs(z)) ** 2)
        F = lambda r: r * r / 2 * (math.log(r) ** 2 - math.log(r) + 0.5)  # noqa: E731
        assert got == pytest.approx(math.pi * (F(1.0) - F(1e-6)), rel=1e-12)

    def test_sides_and_arc(self):
        q = QuadratureSpec(eps=1e-2, r0=2.0)
        _, ws = q.sides()
        assert ws.sum() == pytest.approx(2 * (2.0 - 1e-2))
        _, wa, n = q.arc()
        assert wa.sum() == pytest.approx(math.pi * 1e-2)
        np.testing.assert_allclose(np.abs(n), 1.0)

    def test_graded_breaks(self):
        b = graded_breaks(1e-3, 1.0, 2.0)
        assert b[0] == pytest.approx(1e-3) and b[-1] == pytest.approx(1.0)
        assert np.all(b[1:] / b[:-1] <= 2.0 + 1e-12)
        x, w = panel_rule([0.0, 1.0, 3.0], 5)
        assert np.sum(w * x**9) == pytest.approx(3.0**10 / 10)

    @pytest.mark.parametrize("kw", [dict(eps=0.0), dict(eps=1.0), dict(radial_rule=3),
                                    dict(angular_rule=2)])
    def test_invalid_spec(self, kw):
        with pytest.raises(ValueError):
            QuadratureSpec(**kw)


class TestVariationField:
    @pytest.mark.parametrize("name", ["bump-polynomial", "bump-times-solution"])
    def test_vanishes_on_outer_circle(self, name):
        w = families()[name]
        z = np.exp(1j * np.linspace(-1.5, 1.5, 9))
        np.testing.assert_allclose(w.values(z), 0.0, atol=1e-15)

    @pytest.mark.parametrize("name", ["bump-polynomial", "bump-times-solution"])
    def test_gradient_matches_differences(self, name):
        w = families()[name]
        z = np.array([0.3 + 0.2j, 0.5 - 0.6j, 0.05 + 0.01j])
        _, Dw = w(z)
        h = 1e-6
        for j, d in enumerate((1.0, 1j)):
            num = (w.values(z + h * d) - w.values(z - h * d)) / (2 * h)
            np.testing.assert_allclose(Dw[:, j], num, atol=1e-7)

    def test_sup_norm(self):
        c = np.zeros((2, 6))
        c[0, 0] = 2.0
        assert VariationField.bump_polynomial(c).sup_norm() == pytest.approx(2.0)
        assert VariationField.bump_times_solution(M).sup_norm() == pytest.approx(0.5)

    def test_bad_family(self):
        with pytest.raises(ValueError):
            VariationField("wavelet")
        with pytest.raises(ValueError):
            VariationField("bump-times-solution")


class TestEnergy:
    def test_cauchy_in_eps(self):
        e4 = elastic_energy(M, QuadratureSpec(eps=1e-4)).value
        e5 = elastic_energy(M, QuadratureSpec(eps=1e-5)).value
        assert e4 > 0 and abs(e4 - e5) <= 1e-3 * e5

    def test_monotone_in_eps(self):
        vals = [elastic_energy(M, QuadratureSpec(eps=e)).value for e in SCHEDULE]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_matches_fourfold_resolution(self):
        q = QuadratureSpec(eps=1e-4)
        fine = QuadratureSpec(eps=1e-4, radial_rule=16, angular_rule=16, angular_panels=16)
        a, b = elastic_energy(M, q).value, elastic_energy(M, fine).value
        assert a == pytest.approx(b, rel=1e-6)

    def test_coarse_rule_reports_nonconvergence(self):
        q = QuadratureSpec(eps=1e-6, radial_rule=4, angular_rule=4, angular_panels=1, ratio=1e6)
        with pytest.raises(ConvergenceError):
            elastic_energy(M, q, tol=1e-12)

    @given(st.floats(1e-4, 1.0), st.floats(-1.5, 1.5))
    def test_density_nonnegative(self, r, t):
        f = field_arrays(np.array([r * np.exp(1j * t)]), M)
        assert energy_density(f, M)[0] >= 0.0


class TestGreen:
    def test_zero_variation(self):
        g = green_residual(M, VariationField.zero(), QuadratureSpec(eps=1e-3))
        assert (g.volume, g.divergence, g.sides, g.arc, g.residual) == (0, 0, 0, 0, 0)

    @pytest.mark.parametrize("name", ["bump-polynomial", "bump-times-solution"])
    @pytest.mark.parametrize("eps", [1e-2, 1e-3, 1e-4])
    def test_exact_on_truncated_domain(self, name, eps):
        g = green_residual(M, families()[name], QuadratureSpec(eps=eps))
        assert abs(g.residual) <= g.error_estimate
        assert abs(g.arc) > 10 * g.error_estimate

    @pytest.mark.parametrize("name", ["bump-polynomial", "bump-times-solution"])
    def test_line_term_vanishes(self, name):
        arcs = [abs(green_residual(M, families()[name], QuadratureSpec(eps=e)).arc)
                for e in (1e-2, 1e-3, 1e-4)]
        assert arcs[0] > arcs[1] > arcs[2]
        assert arcs[2] < 1e-3


class TestDecay:
    def test_zero_variation(self):
        d = line_integral_decay(M, VariationField.zero(), SCHEDULE)
        assert d.integral == [0.0] * len(SCHEDULE)

    @pytest.mark.parametrize("name", ["bump-polynomial", "bump-times-solution"])
    def test_bounded_and_decreasing(self, name):
        d = line_integral_decay(M, families()[name], SCHEDULE)
        assert d.decreasing
        assert d.worst_ratio <= 1.05
        assert d.c > 0

    @pytest.mark.parametrize("name", ["bump-polynomial", "bump-times-solution"])
    def test_asymptotic_ratio(self, name):
        d = line_integral_decay(M, families()[name], SCHEDULE)
        for e, a, b in zip(SCHEDULE, d.integral, d.integral[1:]):
            if e <= 1e-3:
                expected = 0.1 * abs(math.log(e / 10)) / abs(math.log(e))
                assert b / a == pytest.approx(expected, rel=0.25)

    def test_fit_failure_reported(self):
        with pytest.raises(FitError):
            line_integral_decay(M, families()["bump-polynomial"], SCHEDULE, slack=-0.5)

    def test_schedule_validation(self):
        w = families()["bump-polynomial"]
        with pytest.raises(ValueError):
            line_integral_decay(M, w, [1e-3, 1e-2])
        with pytest.raises(ValueError):
            line_integral_decay(M, w, [2.0, 1e-2])

    def test_fit_bound_recovers_line(self):
        x = np.linspace(1, 10, 12)
        fit = fit_bound(x, 0.5 * x + 2.0)
        assert fit.c == pytest.approx(0.5) and fit.d == pytest.approx(2.0)
        assert fit.worst_ratio == pytest.approx(1.0)


class TestSobolev:
    def test_slope_matches_angular_integral(self):
        rep = sobolev_diagnostics(M, SCHEDULE, QuadratureSpec())
        assert rep.slope > 0
        assert rep.slope_rel_error <= 0.2
        assert rep.oracle_slope == pytest.approx((M.k**2 + 1) / (2 * M.k**2 * math.pi))

    def test_square_integrable_stress(self):
        rep = sobolev_diagnostics(M, SCHEDULE, QuadratureSpec())
        assert all(rep.l2_sigma_converging.values())
        assert rep.l1_converging
        d = np.abs(np.diff(rep.l2_sigma["sig_xx"]))
        assert np.all(d[1:] < d[:-1])

    def test_constant_field_has_no_growth(self):
        const = lambda z: {k: 1.0 for k in ("sig_xx", "sig_yy", "sig_xy", "sig_zz", "dx_sxx")}  # noqa: E731
        rep = sobolev_diagnostics(M, SCHEDULE, QuadratureSpec(), field=const,
                                  require_divergence=False)
        # only the eps**2 area defect remains: no logarithmic growth
        areas = 0.5 * math.pi * (1 - np.square(SCHEDULE))
        expected = np.polyfit(np.log(1 / np.array(SCHEDULE)), areas, 1)[0]
        assert expected < 2e-5
        assert rep.slope == pytest.approx(expected, rel=1e-6)
        assert all(s == pytest.approx(expected, rel=1e-6) for s in rep.sigma_slopes.values())
        assert rep.oracle_slope is None
        zero = lambda z: {k: 0.0 for k in ("sig_xx", "sig_yy", "sig_xy", "sig_zz", "dx_sxx")}  # noqa: E731
        with pytest.raises(SlopeSignError):
            sobolev_diagnostics(M, SCHEDULE, QuadratureSpec(), field=zero)

    @pytest.mark.parametrize("lam, mu", [(0.0, 1.0), (3.0, 0.5)])
    def test_other_materials(self, lam, mu):
        m = Material(lam, mu)
        rep = sobolev_diagnostics(m, SCHEDULE, QuadratureSpec())
        assert rep.slope_rel_error <= 0.2
        assert leading_slope(m.k) == pytest.approx((m.k**2 + 1) / (2 * m.k**2 * math.pi))


class TestFiniteDifferenceEquilibrium:
    def test_small_residual(self):
        f = field_arrays(np.array([1.0 + 0j]), M)
        scale = max(abs(f[k][0]) for k in ("sig_xx", "sig_yy", "sig_xy"))
        assert np.linalg.norm(equilibrium_residual_fd(1.0, 1e-4, M)) <= 1e-6 * scale

    @pytest.mark.parametrize("z", [1.0, 0.4 + 0.7j, 2.0 - 1.0j])
    def test_second_order(self, z):
        r1 = np.linalg.norm(equilibrium_residual_fd(z, 2e-3, M))
        r2 = np.linalg.norm(equilibrium_residual_fd(z, 1e-3, M))
        assert r1 / r2 == pytest.approx(4.0, rel=0.05)

    def test_uniform_field(self):
        uniform = lambda z: (np.full(z.shape, 2.0), np.full(z.shape, -1.0), np.full(z.shape, 0.5))  # noqa: E731
        assert np.all(equilibrium_residual_fd(0.5, 1e-3, M, stress=uniform) == 0.0)

    def test_step_too_large(self):
        with pytest.raises(DomainError):
            equilibrium_residual_fd(0.01, 1e-3, M)
        with pytest.raises(ValueError):
            equilibrium_residual_fd(1.0, 0.0, M)
