"""Oracle tests: disk sampling, differential residual, 50-digit summation."""

import math

import mpmath
import pytest

from besselstruve import (ClassParams, DenominatorDegeneracyError, DiskSampling,
                          DomainError, NormalizedSeries, ParameterError,
                          SignConvention, highprec_sum_oracle, kernel_series,
                          l_condition, min_real_part_L, min_real_part_T,
                          ode_residual, phi_series, ratio_real_part,
                          t_condition)
from besselstruve.verifier import (run_suites, sample_necessity_tuples,
                                   sample_sufficiency_tuples)

from conftest import NU_GRID


def geometric_series(n_terms):
    """Truncated z/(1-z); the tail is ~r^N, negligible at the test radii."""
    return NormalizedSeries(tuple(1.0 for _ in range(2, n_terms + 1)))


class TestDiskSampling:
    def test_validation(self):
        DiskSampling(0.5, 64, 1e-10)
        with pytest.raises(ParameterError):
            DiskSampling(radius=1.0)
        with pytest.raises(ParameterError):
            DiskSampling(num_points=32)
        with pytest.raises(ParameterError):
            DiskSampling(denominator_floor=0.0)


class TestMinRealPart:
    def test_identity_function_ratio_is_one(self):
        f = NormalizedSeries(())
        for lam in (0.0, 0.5, 0.9):
            assert min_real_part_T(f, lam, DiskSampling(0.7, 64)) == 1.0
            assert min_real_part_L(f, lam, DiskSampling(0.7, 64)) == 1.0

    def test_geometric_series_classical_minima(self):
        # z/(1-z): T ratio min is 1/(1+r), L ratio min is (1-r)/(1+r)
        f = geometric_series(600)
        for r in (0.3, 0.5, 0.8):
            s = DiskSampling(r, 512)
            assert min_real_part_T(f, 0.0, s) == pytest.approx(
                1.0 / (1.0 + r), abs=1e-10)
            assert min_real_part_L(f, 0.0, s) == pytest.approx(
                (1.0 - r) / (1.0 + r), abs=1e-10)

    def test_sufficient_margin_implies_disk_minimum(self):
        s = DiskSampling(0.99, 512)
        for nu, p in ((5.0, ClassParams(0.0, 0.0)),
                      (12.0, ClassParams(0.5, 0.3)),
                      (20.0, ClassParams(0.2, 0.6))):
            assert t_condition(nu, p).margin > 0.05
            assert min_real_part_T(kernel_series(nu), p.lam, s) > p.alpha
        for nu, p in ((12.0, ClassParams(0.0, 0.0)),
                      (60.0, ClassParams(0.5, 0.3))):
            assert l_condition(nu, p).margin > 0.05
            assert min_real_part_L(kernel_series(nu), p.lam, s) > p.alpha

    def test_denominator_degeneracy_reported_with_point(self):
        # f = z - 2 z^2 vanishes at z = 1/2, which the r = 0.5 circle hits
        f = NormalizedSeries((2.0,), SignConvention.NEGATIVE)
        with pytest.raises(DenominatorDegeneracyError) as exc:
            min_real_part_T(f, 0.0, DiskSampling(0.5, 64))
        assert exc.value.z is not None
        assert abs(exc.value.z - 0.5) < 1e-12


class TestRatioRealPart:
    def test_single_point_closed_form(self):
        f = geometric_series(600)
        for z in (0.3, 0.5 + 0.2j):
            expected = (1.0 / (1.0 - z)).real
            assert ratio_real_part(f, 0.0, z, "T") == pytest.approx(
                expected, abs=1e-10)

    def test_kind_validation(self):
        with pytest.raises(ParameterError):
            ratio_real_part(geometric_series(5), 0.0, 0.1, "X")


class TestOdeResidual:
    def test_vanishing_singular_term_at_boundary(self):
        # 2nu+1 = 0: the residual of e^z reduces to |S'' - S|
        for z in (0.3, -0.8, 0.5 + 0.5j):
            assert ode_residual(-0.5, z) <= 1e-11

    def test_half_order_fixture(self):
        assert ode_residual(0.5, 0.7) <= 1e-11

    def test_grid(self):
        import random
        rng = random.Random(123)
        worst = 0.0
        for nu in NU_GRID:
            if nu < -0.5:
                continue
            for _ in range(100):
                r = rng.uniform(0.0, 1.0)
                th = rng.uniform(0.0, 2 * math.pi)
                z = complex(r * math.cos(th), r * math.sin(th))
                worst = max(worst, ode_residual(nu, z, 1e-12))
        assert worst <= 1e-10

    def test_origin_lowest_order_identity(self):
        for nu in (-0.5, 0.0, 2.0):
            assert ode_residual(nu, 0.0) <= 1e-14

    def test_domain_error(self):
        with pytest.raises(DomainError):
            ode_residual(-0.6, 0.5)


class TestHighPrecOracle:
    def test_c0_exact(self):
        assert abs(highprec_sum_oracle("c", 1.7, n=0) - 1) < mpmath.mpf("1e-45")

    def test_m1_closed_form_thirty_digits(self):
        with mpmath.workdps(50):
            expected = 2 * mpmath.e - 1
            got = highprec_sum_oracle("m1", -0.5)
            assert abs(got - expected) < mpmath.mpf("1e-30")

    def test_t_lhs_agrees_with_fast_path(self):
        v = t_condition(1.0, ClassParams(0.3, 0.2))
        ref = float(highprec_sum_oracle("t_proof", 1.0, lam=0.3, alpha=0.2))
        assert v.lhs == pytest.approx(ref, abs=1e-10)

    def test_all_criteria_lhs_on_grid(self):
        # every closed-form lhs against the termwise oracle, over the
        # standard order grid
        from besselstruve import qnu_condition
        for nu in NU_GRID:
            if nu <= -0.5:
                continue
            for lam, alpha in ((0.0, 0.0), (0.6, 0.3)):
                p = ClassParams(lam, alpha)
                pairs = (
                    ("t_proof", t_condition(nu, p).lhs),
                    ("l", l_condition(nu, p).lhs),
                    ("qnu", qnu_condition(nu, p).lhs),
                )
                for sel, fast in pairs:
                    ref = float(highprec_sum_oracle(sel, nu, lam=lam,
                                                    alpha=alpha))
                    assert fast == pytest.approx(ref, abs=1e-10)

    def test_unknown_selector(self):
        with pytest.raises(ParameterError):
            highprec_sum_oracle("bogus", 1.0)


class TestSamplers:
    def test_sufficiency_deterministic(self):
        a = sample_sufficiency_tuples("t", 5, seed=42)
        b = sample_sufficiency_tuples("t", 5, seed=42)
        assert a == b
        c = sample_sufficiency_tuples("t", 5, seed=43)
        assert a != c

    def test_necessity_gates(self):
        from besselstruve import coefficient_sum_T, moments
        for nu, p in sample_necessity_tuples(5, seed=1):
            ws = coefficient_sum_T(phi_series(nu), p)
            assert ws.value >= 1.05 * ws.threshold
            s = moments(nu)
            assert (1.0 - p.lam) * s.m0 + p.lam * s.m1 < 0.95


class TestSuites:
    def test_quick_suites_pass(self):
        results = run_suites(("moments", "ode"), seed=2024)
        assert results and all(r.passed for r in results)

    def test_seed_changes_not_verdicts(self):
        for seed in (1, 99):
            results = run_suites(("necessity",), seed=seed)
            assert all(r.passed for r in results)

    def test_unknown_suite(self):
        with pytest.raises(ParameterError):
            run_suites(("nope",))
