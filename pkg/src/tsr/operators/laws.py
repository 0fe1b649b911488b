"""Operator-law suites: extension laws, antidifferentiation laws, integral laws.

Formal checks run exactly on transseries; numeric checks compare against
oracles at real points, with derivatives taken by Richardson-extrapolated
central differences.  Each suite returns a report with one line per law.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from ..resummation import QuadratureConfig
from ..surreal import omega
from ..transseries import eq_to_order, ts_add, ts_antidiff, ts_diff, ts_scale
from .catalog import CatalogFunction, catalog, monomial_entry
from .extension import antidiff_no, combine_entries, extend, integrate, value_difference
from .tau import SurrealValue, tau_eval


@dataclass
class LawReport:
    suite: str
    results: list[tuple[str, bool, str]] = field(default_factory=list)

    def record(self, law: str, ok: bool, note: str = ""):
        self.results.append((law, bool(ok), note))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def lines(self) -> list[str]:
        out = []
        for law, ok, note in self.results:
            mark = "PASS" if ok else "FAIL"
            out.append(f"[{mark}] {self.suite}.{law}" + (f": {note}" if note else ""))
        return out

    def summary(self) -> str:
        return "\n".join(self.lines())


def central_derivative(fn, x, h=None):
    """Richardson-extrapolated central difference."""
    x = mp.mpf(x)
    h = mp.mpf(h) if h else mp.mpf(10) ** (-mp.mp.dps // 3)
    d1 = (fn(x + h) - fn(x - h)) / (2 * h)
    d2 = (fn(x + h / 2) - fn(x - h / 2)) / h
    return (4 * d2 - d1) / 3


def as_number(v):
    """Decimal value of an integrate/extend result that is a real constant."""
    from .extension import DecoratedValue

    if isinstance(v, SurrealValue):
        return v.numeric_const()
    if isinstance(v, DecoratedValue):
        return v.surreal.numeric_const() + v.offset
    return mp.mpf(v)


def _rel_close(a, b, tol):
    a, b = as_number(a), as_number(b)
    return abs(a - b) <= tol * max(1, abs(a), abs(b))


def antidiff_laws(cfg: QuadratureConfig = None, rel_tol: float = 1e-6) -> LawReport:
    """The six antidifferentiation-operator laws on the catalog."""
    cfg = cfg or QuadratureConfig()
    reg = catalog()
    report = LawReport("antidiff")
    with mp.workdps(cfg.precision):
        # (i) derivative of the antiderivative: formal + numeric
        formal = all(
            eq_to_order(ts_diff(ts_antidiff(reg[n].transseries)), reg[n].transseries, 14)
            for n in ("ei_integrand", "exp_neg_over_x", "exp")
        )
        numeric = True
        for name, x in [("ei_integrand", 3.0), ("exp_neg_over_x", 2.0)]:
            f = reg[name]
            anti = antidiff_no(f)
            got = central_derivative(lambda s: anti.oracle(s), x)
            numeric = numeric and _rel_close(got, f.oracle(mp.mpf(x)), rel_tol)
        report.record("i_derivative_inverts", formal and numeric)

        # (ii) linearity
        f, g = reg["ei_integrand"], reg["exp"]
        combo = combine_entries(f, Fraction(2, 3), g, Fraction(-1, 2))
        lhs = ts_antidiff(combo.transseries)
        rhs = ts_add(
            ts_scale(Fraction(2, 3), ts_antidiff(f.transseries)),
            ts_scale(Fraction(-1, 2), ts_antidiff(g.transseries)),
        )
        report.record("ii_linearity", eq_to_order(lhs, rhs, 14))

        # (iii) monotonicity on a nonnegative entry
        f = reg["exp_neg_over_x"]
        anti = antidiff_no(f)
        xs = [2, 3, 5]
        vals = [anti.oracle(mp.mpf(x)) for x in xs]
        mono = all(b >= a for a, b in zip(vals, vals[1:]))
        surreal_side = value_difference(extend(anti, omega(), 4, cfg=cfg), extend(anti, 2, 4, cfg=cfg))
        pos = _mixed_sign(surreal_side) >= 0
        report.record("iii_monotone", mono and pos)

        # (iv) A(x^n) = x^(n+1)/(n+1)
        ok = True
        for n in range(0, 5):
            anti = antidiff_no(monomial_entry(n))
            want = tuple(Fraction(0) for _ in range(n + 1)) + (Fraction(1, n + 1),)
            ok = ok and anti.transseries.log.Q == want
        report.record("iv_monomials", ok)

        # (v) A(exp) = exp
        report.record("v_exp_fixed", antidiff_no(reg["exp"]) is reg["exp"])

        # (vi) constant difference: A f = F + C when F' = f
        f = reg["ei_integrand"]
        anti = antidiff_no(f)  # the Ei entry
        shifted = anti.oracle(mp.mpf(5)) - anti.oracle(mp.mpf(3))
        direct = mp.quad(lambda s: f.oracle(s), [3, 5])
        report.record("vi_constant_difference", _rel_close(shifted, direct, 1e-12))
    return report


def _mixed_sign(value) -> int:
    """Sign of a surreal value or mixed surreal + decimal difference."""
    from .extension import DecoratedValue

    if isinstance(value, DecoratedValue):
        if value.offset != 0:
            lead = value.surreal.merged()
            # a nonzero real offset beats infinitesimal groups
            if not lead.groups or _leading_is_infinitesimal(lead):
                return 1 if value.offset > 0 else -1
        value = value.surreal
    if isinstance(value, SurrealValue):
        merged = value.merged()
        if not merged.groups:
            return 0
        t = merged.groups[0].stream.term(0)
        return 1 if t[1] > 0 else -1
    return 1 if value > 0 else (-1 if value < 0 else 0)


def _leading_is_infinitesimal(v: SurrealValue) -> bool:
    from ..surreal import SurrealNF, nf_cmp

    t = v.groups[0].stream.term(0)
    return t is not None and nf_cmp(t[0], SurrealNF.zero()) == -1


def extension_laws(cfg: QuadratureConfig = None, rel_tol: float = 1e-6, samples: int = 100) -> LawReport:
    """The four extension-operator laws."""
    cfg = cfg or QuadratureConfig()
    reg = catalog()
    report = LawReport("extension")
    rng = __import__("random").Random(7)
    with mp.workdps(cfg.precision):
        # (i) E f extends f: resummation values against the oracle at random reals
        ok = True
        worst = mp.mpf(0)
        for name, lo, hi in [("ei", 4.0, 12.0), ("erfi_integral", 1.0, 3.0), ("loggamma", 4.0, 12.0)]:
            e = reg[name]
            for _ in range(samples // 10):
                x = mp.mpf(rng.uniform(lo, hi))
                val, _ = e.eb_value(x, cfg)
                ref = e.oracle(x)
                rel = abs(val - ref) / max(1, abs(ref))
                worst = max(worst, rel)
                ok = ok and rel < e.tolerance * 100
        report.record("i_extends", ok, f"worst rel {mp.nstr(worst, 3)}")

        # (ii) linearity over rational combinations at an infinite point
        f, g = reg["ei_integrand"], reg["exp"]
        combo = combine_entries(f, Fraction(3), g, Fraction(-2))
        lhs = extend(combo, omega(), 6, cfg=cfg)
        rhs = extend(f, omega(), 8, cfg=cfg).scale(Fraction(3)) + extend(g, omega(), 8, cfg=cfg).scale(
            Fraction(-2)
        )
        report.record("ii_linearity", lhs.exact_nf(6) == rhs.exact_nf(6))

        # (iii) monomial fixed points: x^b e^(-l x) and x^n log x map to themselves
        from ..transseries import ts_parse
        from ..surreal import SurrealNF, one

        mono = tau_eval(ts_parse("exp(-2*x)*x^(3)*series![1]"), omega(), 4)
        # x^3 e^(-2x) / x = x^2 e^(-2x) at w: w^(2 - 2w)
        expect = SurrealNF.monomial(SurrealNF.from_rational(2) - SurrealNF.monomial(one(), 2))
        report.record("iii_monomial_fixed", mono.exact_nf(2) == expect)
        logmono = tau_eval(ts_parse("x^2*log(x)"), omega(), 4)
        expect_log = SurrealNF.monomial(
            SurrealNF.from_rational(2) + SurrealNF.monomial(SurrealNF.from_rational(-1))
        )
        report.record("iii_log_monomial_fixed", logmono.exact_nf(2) == expect_log)

        # (iv) E f' = (E f)': formal via ts_diff, numeric via central differences
        formal = eq_to_order(
            ts_diff(reg["ei"].transseries), reg["ei_integrand"].transseries, 14
        )
        ok = formal
        for name, x in [("ei", 6.0), ("erfi_integral", 2.0), ("loggamma", 7.0)]:
            e = reg[name]
            got = central_derivative(lambda s: e.oracle(s), x)
            want = e.taylor_term(mp.mpf(x), 1)
            want_v = want[1] if want[0] == "num" else want[1].numeric() * mp.mpf(
                want[2].numerator
            ) / want[2].denominator
            ok = ok and _rel_close(got, want_v, rel_tol)
        report.record("iv_commutes_with_derivative", ok)

        # multiplicativity on the decaying algebra
        from ..transseries import ts_mul_minus

        a = ts_parse("exp(-x)*(1/x + 1/x^2)")
        b = ts_parse("exp(-2*x)*(2/x)")
        prod_then_tau = tau_eval(ts_mul_minus(a, b), omega(), 6)
        # compare coefficientwise against the direct product of images
        ta = tau_eval(a, omega(), 12).exact_nf(12)
        tb = tau_eval(b, omega(), 12).exact_nf(12)
        direct = ta * tb
        got = prod_then_tau.exact_nf(6)
        keep = [t for t in direct.terms if any(t[0] == u[0] for u in got.terms)]
        from ..surreal import SurrealNF as NF

        report.record("multiplicative_on_minus", got == NF(tuple(keep), _normalized=True))
    return report


def integral_laws(
    cfg: QuadratureConfig = None,
    tol: float = 1e-9,
    f: CatalogFunction = None,
    g: CatalogFunction = None,
    a: float = 2.0,
    b: float = 4.0,
) -> LawReport:
    """The seven integral-operator properties on catalog entries."""
    cfg = cfg or QuadratureConfig()
    reg = catalog()
    f = f or reg["ei_integrand"]
    g = g or reg["exp"]
    a, b = mp.mpf(a), mp.mpf(b)
    mid = (a + b) / 2
    report = LawReport("integral")
    with mp.workdps(cfg.precision):
        # (a) d/dx int_a^x f = f
        anti = antidiff_no(f)
        got = central_derivative(lambda s: anti.oracle(s), b)
        report.record("a_derivative", _rel_close(got, f.oracle(b), 1e-6))

        # (b) linearity
        combo = combine_entries(f, Fraction(2), g, Fraction(1, 3))
        lhs = as_number(integrate(combo, float(a), float(b), cfg=cfg))
        rhs = 2 * as_number(integrate(f, float(a), float(b), cfg=cfg)) + as_number(
            integrate(g, float(a), float(b), cfg=cfg)
        ) / 3
        report.record("b_linear", _rel_close(lhs, rhs, tol))

        # (c) FTC: int f' = F(b) - F(a), with F the tabled antiderivative of f
        lhs = integrate(f, float(a), float(b), cfg=cfg)
        rhs = anti.oracle(b) - anti.oracle(a)
        report.record("c_ftc", _rel_close(lhs, rhs, tol))

        # (d) interval additivity (telescoping by construction)
        total = as_number(integrate(f, float(a), float(mid), cfg=cfg)) + as_number(
            integrate(f, float(mid), float(b), cfg=cfg)
        )
        report.record("d_additive", _rel_close(total, integrate(f, float(a), float(b), cfg=cfg), tol))

        # (e) integration by parts: int f'g = fg| - int fg', with f = Ei, g = exp
        ei = reg["ei"]

        def deriv(entry, x):
            t = entry.taylor_term(mp.mpf(x), 1)
            return t[1] if t[0] == "num" else t[1].numeric() * mp.mpf(t[2].numerator) / t[2].denominator

        a0, b0 = mp.mpf(2), mp.mpf(3)
        lhs = mp.quad(lambda s: deriv(ei, s) * g.oracle(s), [a0, b0])
        boundary = ei.oracle(b0) * g.oracle(b0) - ei.oracle(a0) * g.oracle(a0)
        rhs = boundary - mp.quad(lambda s: ei.oracle(s) * deriv(g, s), [a0, b0])
        report.record("e_by_parts", _rel_close(lhs, rhs, tol))

        # (f) substitution along the affine map t -> 2t + 1
        p, q = mp.mpf(2), mp.mpf(1)
        lhs = mp.quad(lambda t: f.oracle(p * t + q) * p, [1, 2])
        rhs = integrate(f, float(p * 1 + q), float(p * 2 + q), cfg=cfg)
        report.record("f_substitution", _rel_close(lhs, rhs, tol))

        # (g) positivity, including the surreal upper endpoint
        em = reg["exp_neg_over_x"]
        val = integrate(em, 3, 5, cfg=cfg)
        surreal = integrate(em, 2, omega(), 4, cfg=cfg)
        report.record("g_positive", val > 0 and _mixed_sign(surreal) >= 0)
    return report


def existint_suite(
    f: CatalogFunction = None,
    g: CatalogFunction = None,
    a: float = 2.0,
    b: float = 4.0,
    cfg: QuadratureConfig = None,
) -> LawReport:
    """Integral-operator checks for a pair of entries, bundled as a report."""
    return integral_laws(cfg, f=f, g=g, a=a, b=b)
