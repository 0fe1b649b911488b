"""Extension to the surreals, surreal antidifferentiation, and integration.

``extend`` realizes the three-way definition: oracle values at real points,
Conway-convergent Taylor series at finite surreal points, and the
transseries image at positive infinite points.  ``antidiff_no`` conjugates
transseries antidifferentiation through the extension (table-backed for the
catalog pairs whose critical time is a proper power), and ``integrate`` is
the two-endpoint difference, with the zero-constant-at-infinity convention
making the constant vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath as mp

from ..errors import UnsupportedPointError
from ..resummation import QuadratureConfig
from ..surreal import LazyNF, SurrealNF, nf_cmp
from ..transseries import TransseriesT1, ts_antidiff
from .catalog import CatalogFunction, catalog, monomial_entry
from .prefactor import Prefactor
from .tau import SurrealPoint, SurrealValue, ValueGroup, tau_eval


def transseriate(f: CatalogFunction) -> TransseriesT1:
    """Tr f: the stored transseries (inverting the resummation is not
    algorithmic, so Tr is data validated against the oracle)."""
    if f.transseries is None:
        raise UnsupportedPointError(f"{f.name} has no height-one transseries")
    return f.transseries


@dataclass
class NumericTaylor:
    """Finite-point extension with decimal coefficients (oracle-backed)."""

    x0: Fraction
    coefficients: list  # mpf Taylor coefficients f^(k)(x0)/k!
    zeta: SurrealNF

    def render(self, terms: int) -> str:
        from ..surreal import render_nf

        bits = []
        zk = SurrealNF.from_rational(1)
        for k, c in enumerate(self.coefficients[:terms]):
            if c == 0:
                continue
            mono = render_nf(zk) if not zk.is_rational() else None
            co = mp.nstr(c, 12)
            bits.append(co if mono is None else f"{co}*({mono})")
            zk = zk * self.zeta
        return " + ".join(bits) + " + ..."


ExtendResult = Union[mp.mpf, SurrealValue, NumericTaylor]


def extend(f: CatalogFunction, point, terms: int = 8, *, cfg: QuadratureConfig = None) -> ExtendResult:
    """E f at a real, finite-surreal, or infinite-surreal point."""
    cfg = cfg or QuadratureConfig()
    if isinstance(point, (int, float, Fraction, mp.mpf)):
        point = SurrealPoint.real_point(Fraction(point)) if not isinstance(point, mp.mpf) else point
    if isinstance(point, mp.mpf):
        f.check_domain(point)
        return f.oracle(point)
    if isinstance(point, SurrealNF):
        point = SurrealPoint.from_nf(point)

    if point.kind == "real":
        f.check_domain(float(point.real))
        if f.exact_value is not None:
            hit = f.exact_value(point.real)
            if hit is not None:
                pref, q = hit
                return SurrealValue([ValueGroup(pref, LazyNF.from_nf(SurrealNF.from_rational(q)))])
        with mp.workdps(cfg.precision):
            return f.oracle(mp.mpf(point.real.numerator) / point.real.denominator)

    if point.kind == "finite":
        return _extend_finite(f, point, terms, cfg)

    if point.is_negative_infinite():
        if f.reflected_name is None:
            raise UnsupportedPointError(f"{f.name} has no reflection entry for negative infinite points")
        reflected = catalog()[f.reflected_name]
        return extend(reflected, SurrealPoint.from_nf(-point.nf), terms, cfg=cfg)

    if f.compose_exp_of is not None:
        base = catalog()[f.compose_exp_of]
        inner = extend(base, point, max(terms, 12), cfg=cfg)
        return exp_surreal_value(inner)

    # a positive infinite point lies beyond any real domain endpoint
    return tau_eval(
        f.transseries,
        point.nf,
        terms,
        crit_coef=f.crit_coef,
        crit_power=f.crit_power,
        ln2pi_coef=f.ln2pi_coef,
    ).scale_prefactor(f.prefactor)


def _extend_finite(f: CatalogFunction, point: SurrealPoint, terms: int, cfg: QuadratureConfig):
    """Taylor series in the infinitesimal part, Conway-convergent by design."""
    x0, zeta = point.real, point.zeta
    f.check_domain(float(x0))
    probe = f.taylor_term(x0, 0)
    exact = probe[0] == "exact"
    kinds = [f.taylor_term(x0, k) for k in range(terms + 2)]
    if exact and all(t[0] == "exact" for t in kinds):
        prefs = {t[1] for t in kinds if t[2] != 0}
        if len(prefs) <= 1:
            pref = prefs.pop() if prefs else Prefactor.one()

            def gen():
                total = SurrealNF.zero()
                zk = SurrealNF.from_rational(1)
                emitted = 0
                k = 0
                top = zeta.terms[0][0]
                while True:
                    t = f.taylor_term(x0, k)
                    total = total + zk * t[2]
                    zk = zk * zeta
                    k += 1
                    horizon = k * top
                    safe = [u for u in total.terms if nf_cmp(u[0], horizon) == 1]
                    while emitted < len(safe):
                        yield safe[emitted]
                        emitted += 1

            return SurrealValue([ValueGroup(pref, LazyNF(gen))])
    with mp.workdps(cfg.precision):
        coeffs = []
        for k in range(terms):
            t = f.taylor_term(x0, k)
            if t[0] == "exact":
                pref, q = t[1], t[2]
                coeffs.append(pref.numeric() * mp.mpf(q.numerator) / q.denominator)
            else:
                coeffs.append(t[1])
        return NumericTaylor(x0=x0, coefficients=coeffs, zeta=zeta)


def exp_surreal_value(v: SurrealValue) -> SurrealValue:
    """exp of a surreal value; supported when it splits into one plain
    stream plus ln-tagged constants (the log Gamma shape)."""
    from ..surreal import one

    main: Optional[LazyNF] = None
    pref = Prefactor.one()
    for g in v.merged().groups:
        if g.prefactor.is_one():
            if main is not None:
                raise UnsupportedPointError("exp of a multi-stream value")
            main = g.stream
        else:
            # constants like   q * ln(b):   exp gives the tag b^q
            syms = g.prefactor.powers
            head = g.stream.truncate(2)
            if not head.is_rational() or len(syms) != 1:
                raise UnsupportedPointError("exp of a non-constant tagged group")
            sym, power = syms[0]
            q = head.as_rational() * g.prefactor.factor * power
            if sym == "ln2pi":
                # exp(q ln 2pi) = 2^q pi^q
                pref = pref * Prefactor.rational_power(Fraction(2), q) * Prefactor.of(1, pi=q)
            elif sym.startswith("ln:"):
                pref = pref * Prefactor.rational_power(Fraction(sym[3:]), q)
            else:
                raise UnsupportedPointError(f"exp of constant tagged {sym}")
    if main is None:
        return SurrealValue([ValueGroup(pref, LazyNF.from_nf(one()))])

    # split the stream: purely infinite head must be finite, the rest splits
    head_terms = []
    i = 0
    while True:
        t = main.term(i)
        if t is None:
            break
        if nf_cmp(t[0], SurrealNF.zero()) != 1:
            break
        head_terms.append(t)
        i += 1
        if i > 64:
            raise UnsupportedPointError("purely infinite part does not terminate")
    real_t = main.term(i)
    real = Fraction(0)
    if real_t is not None and real_t[0].is_zero():
        real = real_t[1]
        i += 1

    from .tau import exp_purely_infinite, exp_prefactor

    lead = exp_purely_infinite(SurrealNF(tuple(head_terms), _normalized=True)) if head_terms else SurrealNF.zero()
    if real:
        pref = pref * exp_prefactor(real)

    tail_start = i

    def small_gen():
        j = tail_start
        while True:
            t = main.term(j)
            if t is None:
                return
            yield t
            j += 1

    small = LazyNF(small_gen)
    if small.term(0) is None:
        return SurrealValue([ValueGroup(pref, LazyNF.from_nf(SurrealNF.monomial(lead)))])
    stream = exp_lazy_infinitesimal(small).shift(lead)
    return SurrealValue([ValueGroup(pref, stream)])


def exp_lazy_infinitesimal(z: LazyNF) -> LazyNF:
    """exp of a lazily given infinitesimal: exp(truncation) stabilizes
    leader by leader because the dropped tail only reaches lower leaders."""

    def gen():
        from .tau import exp_infinitesimal

        emitted = 0
        n = 4
        while True:
            zn = z.truncate(n)
            nxt = z.term(n)
            if zn.is_zero():
                yield from iter(LazyNF.from_nf(SurrealNF.from_rational(1)))
                return
            stream = exp_infinitesimal(zn)
            if nxt is None:
                i = 0
                while True:
                    t = stream.term(i)
                    if t is None:
                        return
                    yield t
                    i += 1
            # terms above the first dropped exponent are final
            cutoff = nxt[0]
            idx = emitted
            while True:
                t = stream.term(idx)
                if t is None or nf_cmp(t[0], cutoff) != 1:
                    break
                yield t
                idx += 1
            emitted = idx
            n *= 2

    return LazyNF(gen)


# -- antidifferentiation and the integral ----------------------------------------


def derive_antidiff_kernel(mu: Fraction, offset: Fraction, y: "PowerSeries", w: "PowerSeries"):
    """Closed-form Borel transform of the antiderivative series w.

    For a group x^b e^(mu x) y with finite y and b in {0, 1}, the transform
    of the solution of w' + (mu + b/x) w = y is exact:

        b = 0:  W = Y / (mu - p)            (partial fractions)
        b = 1:  W = w_1 + int_0^p Y'(s)/(mu - s) ds   (a log plus a polynomial)

    where Y is the polynomial Borel transform of y.  For decaying groups the
    reference point mu is negative, so W is analytic on the Laplace ray.
    """
    from ..resummation import BorelPoly, ClosedFormKernel, KernelEntry, borel_transform
    from ..resummation.kernels import ClosedFormKernel as CFK

    if y.length is None or offset not in (0, 1):
        return None
    K = y.length or 0
    Y = borel_transform(y, K)
    lam = Fraction(mu)  # reference point of the ratio

    def divide(poly: BorelPoly):
        """poly(p) = Q(p) (lam - p) + r, by synthetic division."""
        coeffs = list(poly.coeffs)
        d = len(coeffs) - 1
        if d < 0:
            return BorelPoly(()), Fraction(0)
        q = [Fraction(0)] * max(d, 0)
        # matching coefficients of lam*Q - p*Q: q_(k-1) = lam q_k - c_k
        carry = Fraction(0)  # q_d = 0
        for k in range(d, 0, -1):
            carry = lam * carry - coeffs[k]
            q[k - 1] = carry
        r = coeffs[0] - lam * q[0] if q else coeffs[0]
        return BorelPoly(tuple(q)), r

    growth = (float(4 * (1 + sum(abs(c) for c in Y.coeffs))), 0.25 if lam > 0 else 0.0)
    if offset == 0:
        Q, r = divide(Y)
        # W = Q(p) + (r/lam) v^-1, v = 1 - p/lam
        terms = [(r / lam, Fraction(-1), 0)] if r else []
        kernel = CFK(lam, terms, Q, growth, name=f"anti({lam})")
        m = 1 if (lam > 0 and r != 0) else 0
        return KernelEntry(kernel, m=m)
    # offset == 1
    dY = BorelPoly(tuple((k + 1) * c for k, c in enumerate(Y.coeffs[1:])))
    Q, r = divide(dY)
    from ..resummation import p_integrate_poly

    poly = p_integrate_poly(Q, 1) + BorelPoly((Fraction(w.coeff(1)),))
    terms = [(-r, Fraction(0), 1)] if r else []  # -r log v
    kernel = CFK(lam, terms, poly, growth, name=f"anti({lam})")
    return KernelEntry(kernel, m=0)


def antidiff_no(f: CatalogFunction) -> CatalogFunction:
    """A_No f: the antiderivative entry with zero constant at infinity."""
    reg = catalog()
    table = {e.antiderivative_of: name for name, e in reg.items() if e.antiderivative_of}
    if f.name in table:
        return reg[table[f.name]]
    if f.name == "exp":
        return f
    if f.name.startswith("monomial_"):
        n = int(f.name.split("_")[1])
        entry = monomial_entry(n + 1)
        scaled = scale_entry(entry, Fraction(1, n + 1))
        return scaled
    if f.crit_power != 1 or f.crit_coef != 1:
        raise UnsupportedPointError(
            f"antidifferentiation of {f.name} needs a stored antiderivative (critical time change)"
        )
    anti_ts = ts_antidiff(f.transseries)
    # attach exact Borel kernels where the derivation applies
    from ..transseries.grid import groups_of

    src = {(g.mu, g.offset): g.series for g in groups_of(f.transseries)}
    for g in groups_of(anti_ts):
        y = src.get((g.mu, g.offset))
        if y is not None and g.mu != 0:
            entry = derive_antidiff_kernel(g.mu, g.offset, y, g.series)
            if entry is not None:
                g.series.derived_kernel = entry
    decaying = not f.transseries.plus.terms and f.transseries.log.is_zero()

    def oracle(x, f=f):
        # zero constant at infinity: -integral(x..oo) when it converges,
        # resummation assembly otherwise
        x = mp.mpf(x)
        if decaying:
            return -mp.quad(lambda s: f.oracle(s), [x, mp.inf])
        val, _ = anti_entry.eb_value(x)
        return val

    anti_entry = CatalogFunction(
        name=f"antidiff({f.name})",
        transseries=anti_ts,
        oracle=oracle,
        taylor_term=_shifted_taylor(f, oracle),
        kernels=dict(f.kernels),
        domain_c=f.domain_c,
        tolerance=max(f.tolerance, 1e-9),
        tail_constants=f.tail_constants,
        derivative_name=f.name,
    )
    return anti_entry


def _shifted_taylor(f: CatalogFunction, oracle):
    def taylor(x0, k):
        if k == 0:
            return ("num", oracle(mp.mpf(float(x0))))
        t = f.taylor_term(x0, k - 1)
        if t[0] == "exact":
            return ("exact", t[1], t[2] / k)
        return ("num", t[1] / k)

    return taylor


def scale_entry(f: CatalogFunction, c: Fraction) -> CatalogFunction:
    from ..transseries import ts_scale

    c = Fraction(c)

    def taylor(x0, k, f=f):
        t = f.taylor_term(x0, k)
        if t[0] == "exact":
            return ("exact", t[1], t[2] * c)
        return ("num", t[1] * c.numerator / c.denominator)

    return CatalogFunction(
        name=f"{c}*{f.name}",
        transseries=ts_scale(c, f.transseries) if f.transseries is not None else None,
        oracle=lambda x, f=f: f.oracle(x) * c.numerator / c.denominator,
        taylor_term=taylor,
        crit_coef=f.crit_coef,
        crit_power=f.crit_power,
        prefactor=f.prefactor,
        ln2pi_coef=f.ln2pi_coef * c,
        kernels=dict(f.kernels),
        domain_c=f.domain_c,
        tolerance=f.tolerance,
        tail_constants=f.tail_constants,
        exact_value=(lambda q, f=f, c=c: _scale_exact(f.exact_value(q), c)) if f.exact_value else None,
    )


def _scale_exact(hit, c: Fraction):
    if hit is None:
        return None
    pref, q = hit
    return pref, q * c


def combine_entries(a: CatalogFunction, ca, b: CatalogFunction, cb) -> CatalogFunction:
    """ca*a + cb*b for entries sharing a critical time."""
    from ..transseries import ts_add, ts_scale

    if (a.crit_coef, a.crit_power) != (b.crit_coef, b.crit_power):
        raise UnsupportedPointError("combining entries across critical times")
    if not a.prefactor.is_one() or not b.prefactor.is_one():
        raise UnsupportedPointError("combining entries with symbolic prefactors")
    ca, cb = Fraction(ca), Fraction(cb)

    def taylor(x0, k):
        ta, tb = a.taylor_term(x0, k), b.taylor_term(x0, k)
        if ta[0] == "exact" and tb[0] == "exact" and ta[1] == tb[1]:
            return ("exact", ta[1], ca * ta[2] + cb * tb[2])
        va = ta[2] * ta[1].numeric() if ta[0] == "exact" else ta[1]
        vb = tb[2] * tb[1].numeric() if tb[0] == "exact" else tb[1]
        return (
            "num",
            mp.mpf(ca.numerator) / ca.denominator * va + mp.mpf(cb.numerator) / cb.denominator * vb,
        )

    kernels = dict(a.kernels)
    kernels.update(b.kernels)
    return CatalogFunction(
        name=f"{ca}*{a.name}+{cb}*{b.name}",
        transseries=ts_add(ts_scale(ca, a.transseries), ts_scale(cb, b.transseries)),
        oracle=lambda x: a.oracle(x) * ca.numerator / ca.denominator + b.oracle(x) * cb.numerator / cb.denominator,
        taylor_term=taylor,
        crit_coef=a.crit_coef,
        crit_power=a.crit_power,
        ln2pi_coef=a.ln2pi_coef * ca + b.ln2pi_coef * cb,
        kernels=kernels,
        domain_c=max(filter(lambda v: v is not None, [a.domain_c, b.domain_c]), default=None),
        tolerance=max(a.tolerance, b.tolerance),
        tail_constants=a.tail_constants,
    )


def integrate(f: CatalogFunction, a, b, terms: int = 8, *, cfg: QuadratureConfig = None):
    """integral(f, a..b) = (A_No f)(b) - (A_No f)(a)."""
    anti = antidiff_no(f)
    hi = extend(anti, b, terms, cfg=cfg)
    lo = extend(anti, a, terms, cfg=cfg)
    return value_difference(hi, lo)


def value_difference(hi, lo):
    if isinstance(hi, SurrealValue) and isinstance(lo, SurrealValue):
        return hi - lo
    if isinstance(hi, SurrealValue) and isinstance(lo, mp.mpf):
        return DecoratedValue(hi, -lo)
    if isinstance(lo, SurrealValue) and isinstance(hi, mp.mpf):
        return DecoratedValue(lo.scale(-1), hi)
    return hi - lo


@dataclass
class DecoratedValue:
    """A surreal value plus a decimal real offset (mixed-endpoint integrals)."""

    surreal: SurrealValue
    offset: mp.mpf

    def render(self, terms: int = 8) -> str:
        body = self.surreal.render(terms)
        if self.offset == 0:
            return body
        sign = "+" if self.offset > 0 else "-"
        return f"{body} {sign} {mp.nstr(abs(self.offset), 12)}"
