"""Averaged Laplace numerics: PV poles, branch points, Pade, Watson, eb_sum."""

from fractions import Fraction as F
from math import factorial

import mpmath as mp
import pytest

from tsr.errors import DegenerateTableError, GrowthBoundViolated, SingularPointError
from tsr.resummation import (
    BorelPoly,
    KernelEntry,
    PolyKernel,
    QuadratureConfig,
    average_eval,
    borel_transform,
    catalan_weight,
    coth_kernel,
    eb_sum,
    laplace,
    log_kernel,
    pade_continue,
    pole_kernel,
    sqrt_branch_kernel,
    watson_check,
)
from tsr.transseries import PowerSeries, ts_antidiff, ts_parse

CFG = QuadratureConfig()


def mpf_close(a, b, tol):
    return abs(mp.mpf(a) - mp.mpf(b)) <= tol * max(1, abs(mp.mpf(b)))


class TestAverageEval:
    def test_log_kernel_at_two_vanishes(self):
        # man(-log(1-p)) = -log|1-p| = 0 at p = 2
        assert abs(average_eval(log_kernel(1), 2, cfg=CFG)) < 1e-40

    def test_below_first_singularity_is_plain_value(self):
        f = pole_kernel(1)
        assert mpf_close(average_eval(f, 0.5, cfg=CFG), 2.0, 1e-30)

    def test_branch_below(self):
        f = sqrt_branch_kernel(1, 1)
        assert mpf_close(average_eval(f, F(3, 4), cfg=CFG), 2.0, 1e-30)

    def test_branch_average_vanishes_beyond(self):
        f = sqrt_branch_kernel(1, 1)
        # the generic weighted sum leaves only rounding noise of cos(pi/2)
        assert abs(average_eval(f, 2, cfg=CFG)) < 1e-40
        # the closed-form average is exactly zero
        assert f.averaged(mp.mpf(2)) == 0

    def test_singular_point_raises(self):
        with pytest.raises(SingularPointError):
            average_eval(pole_kernel(1), 1, cfg=CFG)

    def test_weighted_sum_matches_half_sum(self):
        f = log_kernel(1)
        p = mp.mpf("1.7")
        averaged = average_eval(f, p, weights=catalan_weight, cfg=CFG)
        half = (f.lateral(p, +1) + f.lateral(p, -1)).real / 2
        assert mpf_close(averaged, half, 1e-35)


class TestLaplace:
    def test_constant_kernel(self):
        val, err = laplace(PolyKernel(BorelPoly((F(1),))), 2, CFG)
        assert mpf_close(val, 0.5, 1e-20)

    def test_pv_pole_is_ei(self):
        # e^x PV L[1/(1-p)] = Ei(x)
        for x in (4, 8):
            val, _ = laplace(pole_kernel(1), x, CFG)
            ref = mp.exp(-x) * mp.ei(x)
            assert mpf_close(val, ref, 1e-12)

    def test_log_route_matches_pv_route(self):
        # x L[-log|1-p|] = PV L[1/(1-p)] (integration by parts)
        x = 6
        pv, _ = laplace(pole_kernel(1), x, CFG)
        lg, _ = laplace(pole_kernel(1).p_integral(1), x, CFG)
        assert mpf_close(x * lg, pv, 1e-12)

    def test_branch_kernel_is_erfi_integral(self):
        # (x/2) e^(x^2) int_0^1 e^(-x^2 p) (1-p)^(-1/2) dp = int_0^x e^(s^2) ds
        for x in (1, 2):
            t = mp.mpf(x) ** 2
            val, _ = laplace(sqrt_branch_kernel(1, F(1, 2)), t, CFG)
            lhs = mp.mpf(x) * mp.exp(t) * val
            ref = mp.quad(lambda s: mp.exp(s * s), [0, x])
            assert mpf_close(lhs, ref, 1e-14)

    def test_growth_bound(self):
        k = log_kernel(1)  # c3 = 1/4
        with pytest.raises(GrowthBoundViolated):
            laplace(k, 0.1, CFG)

    def test_halving_tolerance_stays_within_estimate(self):
        # quadrature convergence: refining changes results less than the estimate
        for kernel in (pole_kernel(1), sqrt_branch_kernel(1, F(1, 2)), coth_kernel()):
            loose = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-7, precision=30)
            tight = QuadratureConfig(abs_tol=1e-16, rel_tol=1e-14, precision=60)
            v1, e1 = laplace(kernel, 6, loose)
            v2, e2 = laplace(kernel, 6, tight)
            assert abs(v1 - v2) <= e1 + e2


class TestPade:
    def test_reproduces_rational_input(self):
        b = BorelPoly((F(1),) * 6)
        k = pade_continue(b, (0, 1))
        assert k.num == (1,) and k.den == (1, -1)

    def test_exponential_accuracy(self):
        b = BorelPoly(tuple(F(1, factorial(k)) for k in range(8)))
        k2 = pade_continue(b, (2, 2))
        k3 = pade_continue(b, (3, 3))
        errs2 = [abs(k2.value(p) - mp.exp(p)) for p in (0.25, 0.5, 0.75, 1.0)]
        errs3 = [abs(k3.value(p) - mp.exp(p)) for p in (0.25, 0.5, 0.75, 1.0)]
        assert max(errs2) < 5e-3  # the (2,2) entry reaches only ~4e-3 at p=1
        assert max(errs3) < 1e-3

    def test_branch_proxy_pole_cluster(self):
        b = BorelPoly(tuple(sqrt_branch_kernel(1, 1).taylor(8)))
        k = pade_continue(b, (4, 4))
        poles = k.real_positive_poles()
        assert len(poles) >= 3
        assert all(p > 1 for p in poles)
        assert min(poles) < 1.05  # accumulation toward the branch point

    def test_degenerate_table(self):
        with pytest.raises(DegenerateTableError):
            pade_continue(BorelPoly((F(1), F(0), F(0), F(0))), (1, 2))

    def test_taylor_matches_input(self):
        b = BorelPoly((F(1), F(2), F(3), F(1), F(5), F(2), F(1)))
        k = pade_continue(b, (3, 3))
        assert k.taylor(6) == list(b.coeffs)


class TestWatson:
    def test_monomial_exact(self):
        # f(p) = p: Laplace = 1/x^2 = Gamma(2)/x^2 exactly
        rep = watson_check(PolyKernel(BorelPoly((F(0), F(1)))), a=1, b=1, K=0, cfg=CFG)
        assert rep.passed
        assert rep.fitted_C < 1e-20

    def test_sqrt_branch_coefficients(self):
        rep = watson_check(sqrt_branch_kernel(1, 1), a=1, b=0, K=4, xs=(4.0, 6.0, 8.0, 12.0), cfg=CFG)
        assert rep.passed

    def test_coth_kernel_leading_twelfth(self):
        assert coth_kernel().taylor(0)[0] == F(1, 12)
        rep = watson_check(coth_kernel(), a=2, b=0, K=3, xs=(4.0, 6.0, 8.0), cfg=CFG)
        assert rep.passed


class TestEbSum:
    def test_convergent_series_is_direct_sum(self):
        conv = ts_parse("series![1/2, 1/4, 1/8, 1/16, 1/32, 1/64]")
        val, _ = eb_sum(conv, 3, CFG)
        with mp.workdps(CFG.precision):
            direct = sum(mp.mpf(1) / 2**k / mp.mpf(3) ** k for k in range(1, 7))
            assert mpf_close(val, direct, mp.mpf(10) ** -40)

    def test_ei_transseries(self):
        ei_ts = ts_antidiff(ts_parse("exp(x)/x"))
        val, err = eb_sum(ei_ts, 10, CFG, resolver=lambda s: KernelEntry(pole_kernel(1), 1))
        ref = mp.ei(10)
        assert mpf_close(val, ref, 1e-10)

    def test_ei_generic_pade_route(self):
        ei_ts = ts_antidiff(ts_parse("exp(x)/x"))
        val, err = eb_sum(ei_ts, 8, CFG)
        assert mpf_close(val, mp.ei(8), 1e-9)

    def test_monomial_fixed_point(self):
        ts = ts_parse("x^(3)*exp(2*x)*series![1]")  # x^3 e^(2x) / x = x^2 e^(2x)
        val, _ = eb_sum(ts, 5, CFG)
        assert mpf_close(val, mp.mpf(25) * mp.exp(10), 1e-20)

    def test_log_part_exact(self):
        ts = ts_parse("x^2*log(x) + 3 - 2/x")
        val, _ = eb_sum(ts, 7, CFG)
        ref = 49 * mp.log(7) + 3 - mp.mpf(2) / 7
        assert mpf_close(val, ref, 1e-25)


class TestL1Norms:
    def test_convolution_submultiplicative(self, rng):
        # ||F*G||_(1,c) <= ||F||_(1,c) ||G||_(1,c) on sampled polynomials
        from tsr.resummation import convolve

        c = mp.mpf(1)
        T = 30

        def norm(poly):
            return mp.quad(lambda p: abs(poly(p)) * mp.exp(-c * p), [0, T])

        for _ in range(5):
            f = BorelPoly(tuple(F(rng.randint(-3, 3)) for _ in range(5)))
            g = BorelPoly(tuple(F(rng.randint(-3, 3)) for _ in range(5)))
            lhs = norm(convolve(f, g))
            rhs = norm(f) * norm(g)
            assert lhs <= rhs * (1 + mp.mpf(1e-20)) + mp.mpf(1e-12)
