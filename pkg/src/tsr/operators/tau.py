"""The map from transseries to surreal values at positive infinite points.

Evaluation points are surreals of the form nu = r*w + s (r > 0, s rational).
Transmonomials map through two imported exponential identities,

    exp(r * w^a) = w^(r * w^a)   for rational a >= 1, and
    log w = w^(1/w)              (equivalently exp(r*w^(1/w)) = w^r),

together with binomial re-expansion of (1 + u)^q for the infinitesimal tilt
u that appears when s != 0 or the critical time is a proper power.  Every
stream produced here is an exact Conway Limit whose stabilization schedule
follows from the grid structure: the coefficient of a fixed leader is
touched by finitely many (k, l, j) triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from ..errors import UnsupportedPointError
from ..surreal import (
    GT,
    LT,
    LazyNF,
    SurrealNF,
    decompose,
    nf_cmp,
    omega,
    one,
)
from ..transseries.grid import TransseriesT1, groups_of
from ..transseries.series import PowerSeries
from .prefactor import Prefactor, exp_prefactor, ln_prefactor

#: exponent window (in leader count) kept ahead of the requested terms
WINDOW_SLACK = 4


@dataclass(frozen=True)
class SurrealPoint:
    """A point of No in the trichotomy real / finite / positive infinite."""

    kind: str  # "real" | "finite" | "infinite"
    real: Optional[Fraction] = None
    zeta: Optional[SurrealNF] = None  # infinitesimal part for finite points
    nf: Optional[SurrealNF] = None  # full normal form for infinite points

    @classmethod
    def from_nf(cls, a: SurrealNF) -> "SurrealPoint":
        infinite, real, small = decompose(a)
        if not infinite.is_zero():
            return cls("infinite", nf=a)
        if not small.is_zero():
            return cls("finite", real=real, zeta=small)
        return cls("real", real=real)

    @classmethod
    def omega(cls) -> "SurrealPoint":
        return cls("infinite", nf=omega())

    @classmethod
    def real_point(cls, q) -> "SurrealPoint":
        return cls("real", real=Fraction(q))

    def is_negative_infinite(self) -> bool:
        return self.kind == "infinite" and self.nf.terms[0][1] < 0


@dataclass
class ValueGroup:
    prefactor: Prefactor
    stream: LazyNF

    def scaled(self, q: Fraction) -> "ValueGroup":
        return ValueGroup(self.prefactor, self.stream.scale(q))


@dataclass
class SurrealValue:
    """A finite sum of prefactor-scaled lazy normal forms."""

    groups: list[ValueGroup] = field(default_factory=list)

    @classmethod
    def from_nf(cls, a: SurrealNF) -> "SurrealValue":
        return cls([ValueGroup(Prefactor.one(), LazyNF.from_nf(a))])

    @classmethod
    def zero(cls) -> "SurrealValue":
        return cls([])

    def merged(self) -> "SurrealValue":
        by_pref: dict[Prefactor, LazyNF] = {}
        order: list[Prefactor] = []
        for g in self.groups:
            pref, stream = g.prefactor, g.stream
            if pref.factor != 1:
                # rational parts live in the stream; tags alone key the group
                stream = stream.scale(pref.factor)
                pref = Prefactor(Fraction(1), pref.powers)
            if pref in by_pref:
                by_pref[pref] = by_pref[pref] + stream
            else:
                by_pref[pref] = stream
                order.append(pref)
        out = []
        for pref in order:
            stream = by_pref[pref]
            if stream.term(0) is not None:
                out.append(ValueGroup(pref, stream))
        return SurrealValue(out)

    def __add__(self, other: "SurrealValue") -> "SurrealValue":
        return SurrealValue(self.groups + other.groups).merged()

    def scale(self, q) -> "SurrealValue":
        q = Fraction(q)
        if q == 0:
            return SurrealValue.zero()
        return SurrealValue([g.scaled(q) for g in self.groups])

    def scale_prefactor(self, pref: Prefactor) -> "SurrealValue":
        if pref.is_one():
            return self
        return SurrealValue([ValueGroup(pref * g.prefactor, g.stream) for g in self.groups]).merged()

    def __sub__(self, other: "SurrealValue") -> "SurrealValue":
        return self + other.scale(-1)

    def exact_nf(self, terms: int) -> SurrealNF:
        """The truncated normal form, requiring a single trivial prefactor."""
        merged = self.merged()
        if not merged.groups:
            return SurrealNF.zero()
        if len(merged.groups) != 1 or not merged.groups[0].prefactor.is_one():
            raise UnsupportedPointError("value carries irrational prefactors; no plain normal form")
        return merged.groups[0].stream.truncate(terms)

    def numeric_const(self):
        """Decimal value when every term sits at exponent zero (a constant)."""
        import mpmath as mp

        total = mp.mpf(0)
        for g in self.merged().groups:
            head = g.stream.truncate(2)
            if not head.is_rational():
                raise UnsupportedPointError(f"{self.render(3)} is not a real constant")
            q = head.as_rational()
            total += g.prefactor.numeric() * mp.mpf(q.numerator) / q.denominator
        return total

    def render(self, terms: int = 8) -> str:
        merged = self.merged()
        if not merged.groups:
            return "0"
        bits = []
        for g in merged.groups:
            body = g.stream.render(terms)
            if g.prefactor.is_one():
                bits.append(body)
            elif body == "1":
                bits.append(g.prefactor.render())
            else:
                bits.append(f"{g.prefactor.render()}*({body})")
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out


# -- the imported exponential identities ---------------------------------------


def g_map_exponent(y: SurrealNF) -> SurrealNF:
    """g with exp(w^y) = w^(w^g(y)); imported for y >= 1 and y = 1/w."""
    if nf_cmp(y, one()) != LT:
        return y
    if y == SurrealNF.monomial(SurrealNF.from_rational(-1)):
        return SurrealNF.zero()
    raise UnsupportedPointError(f"no imported exponential identity for exponent {y}")


def exp_purely_infinite(a: SurrealNF) -> SurrealNF:
    """exp(sum r_i w^(y_i)) = w^E with E = sum r_i w^(g(y_i)); returns E."""
    out = []
    for y, r in a.terms:
        if nf_cmp(y, SurrealNF.zero()) != GT:
            raise ValueError("argument must be purely infinite")
        out.append((g_map_exponent(y), r))
    return SurrealNF(out)


def exp_nf(a: SurrealNF) -> ValueGroup:
    """exp of a finite-or-infinite normal form as one prefactor-scaled stream."""
    infinite, real, small = decompose(a)
    lead = SurrealNF.zero()
    if not infinite.is_zero():
        lead = exp_purely_infinite(infinite)
    pref = exp_prefactor(real) if real else Prefactor.one()
    if small.is_zero():
        return ValueGroup(pref, LazyNF.from_nf(SurrealNF.monomial(lead)))
    stream = exp_infinitesimal(small).shift(lead)
    return ValueGroup(pref, stream)


def exp_infinitesimal(z: SurrealNF) -> LazyNF:
    """exp(z) = sum z^k / k! for strictly infinitesimal z, exactly.

    Partial sums stabilize leader by leader: z^k only reaches exponents at or
    below k * (leading exponent of z), so every prefix becomes final after
    finitely many factors.
    """
    top = z.terms[0][0]  # leading (negative) exponent

    def gen() -> Iterator:
        total = one()
        zk = one()
        kfact = Fraction(1)
        emitted = 0
        k = 0
        while True:
            k += 1
            zk = zk * z
            kfact *= k
            total = total + zk * (1 / kfact)
            horizon = (k + 1) * top
            safe = [t for t in total.terms if nf_cmp(t[0], horizon) == GT]
            while emitted < len(safe):
                yield safe[emitted]
                emitted += 1

    return LazyNF(gen)


def log_of_leader(y1: SurrealNF, r1: Fraction) -> tuple[SurrealNF, Optional[Prefactor]]:
    """log(w^y1 * r1) = y1 * w^(1/w) + ln(r1); the constant comes back as a tag."""
    log_omega = SurrealNF.monomial(SurrealNF.monomial(SurrealNF.from_rational(-1)))
    main = y1 * log_omega
    const = None if r1 == 1 else ln_prefactor(r1)
    if r1 <= 0:
        raise UnsupportedPointError("log of a non-positive leader")
    return main, const


# -- points and powers ----------------------------------------------------------


@dataclass
class PointData:
    """nu = r*w + s decomposed, plus its critical-time image t0 = c * nu^q."""

    r: Fraction
    s: Fraction
    t0_lead_exp: Fraction  # t0 = r1 * w^(e1) * (1 + u)
    t0_lead_coef: Fraction
    u: SurrealNF  # exact infinitesimal tilt (finite normal form)


def analyze_point(nu: SurrealNF, *, crit_coef: Fraction = Fraction(1), crit_power: Fraction = Fraction(1)) -> PointData:
    """Validate nu = r*w + s and build t0 = crit_coef * nu^crit_power."""
    terms = dict()
    for e, c in nu.terms:
        if not e.is_rational():
            raise UnsupportedPointError(f"point {nu} outside the r*w + s grammar")
        terms[e.as_rational()] = c
    if set(terms) - {Fraction(1), Fraction(0)}:
        raise UnsupportedPointError(f"point {nu} outside the r*w + s grammar")
    r = terms.get(Fraction(1), Fraction(0))
    s = terms.get(Fraction(0), Fraction(0))
    if r <= 0:
        raise UnsupportedPointError("point must be positive infinite: need r > 0")

    crit_power = Fraction(crit_power)
    e1 = crit_power
    # nu^q = r^q w^q (1 + s/(r w))^q
    if s == 0:
        u = SurrealNF.zero()
        lead_coef = _rational_pow(r, crit_power)
    else:
        if crit_power.denominator != 1:
            raise UnsupportedPointError(
                "fractional critical powers need s = 0 in the evaluation point"
            )
        u_base = SurrealNF.monomial(SurrealNF.from_rational(-1), s / r)  # s/(r w)
        u = _binomial_expand_finite(u_base, int(crit_power)) - one()
        lead_coef = r ** int(crit_power)
    if lead_coef.denominator != 1 and crit_power.denominator != 1:
        raise UnsupportedPointError("critical leader coefficient is irrational")
    return PointData(r=r, s=s, t0_lead_exp=e1, t0_lead_coef=Fraction(crit_coef) * lead_coef, u=u)


def _rational_pow(base: Fraction, q: Fraction) -> Fraction:
    if q.denominator == 1:
        return base ** int(q)
    from .prefactor import _exact_root

    root = _exact_root(base, q.denominator)
    if root is None:
        raise UnsupportedPointError(f"{base}^{q} is irrational; unsupported leader coefficient")
    return root**q.numerator


def _binomial_expand_finite(u: SurrealNF, n: int) -> SurrealNF:
    return (one() + u) ** n


def binomial_tilt(u: SurrealNF, q: Fraction, window: int) -> SurrealNF:
    """(1 + u)^q expanded through u^window, exact (u strictly infinitesimal)."""
    if u.is_zero():
        return one()
    acc = SurrealNF.zero()
    uk = one()
    binom = Fraction(1)
    for j in range(window + 1):
        acc = acc + uk * binom
        uk = uk * u
        binom *= (q - j) / (j + 1)
    return acc


def eval_series_at(ps: PowerSeries, pt: PointData, offset: Fraction, min_terms: int) -> tuple[Prefactor, LazyNF]:
    """sum(c_l t0^(offset - l), l >= 1) as a prefactor-scaled descending stream.

    The leader coefficient b = t0_lead_coef enters each term as b^(offset - l)
    = b^offset * b^-l; the possibly irrational b^offset factors out as the
    group prefactor while the stream stays rational.  The coefficient of any
    fixed leader receives finitely many (l, j) contributions, which bounds
    the materialization window exactly.
    """
    e1 = pt.t0_lead_exp
    b = pt.t0_lead_coef
    pref = Prefactor.rational_power(b, offset)

    def materialize(n_leaders: int) -> tuple[list, bool]:
        total = SurrealNF.zero()
        exhausted = False
        exact_tilts = True
        # widening the tilt window past e1*n keeps every later contribution
        # strictly below the horizon (tilt exponents drop at least by 1 per order)
        tilt_window = int(e1 * n_leaders) + 1 + WINDOW_SLACK
        for l in range(1, n_leaders + 1):
            if ps.length is not None and l > ps.length:
                exhausted = True
                break
            c = ps.coeff(l)
            if c == 0:
                continue
            q = offset - l
            if not (q.denominator == 1 and 0 <= q <= tilt_window):
                exact_tilts = False  # the binomial series for (1+u)^q is infinite
            tilt = binomial_tilt(pt.u, q, tilt_window)
            total = total + SurrealNF.monomial(SurrealNF.from_rational(e1 * q), c * b**-l) * tilt
        if exhausted and (pt.u.is_zero() or exact_tilts):
            return list(total.terms), True
        horizon = e1 * (offset - n_leaders)
        return [t for t in total.terms if nf_cmp(t[0], SurrealNF.from_rational(horizon)) == GT], False

    def gen():
        n = min_terms + WINDOW_SLACK
        emitted = 0
        while True:
            safe, final = materialize(n)
            while emitted < len(safe):
                yield safe[emitted]
                emitted += 1
            if final:
                return
            n += max(min_terms, 4)

    return pref, LazyNF(gen)


def tau_eval_group(mu: Fraction, offset: Fraction, ps: PowerSeries, pt: PointData, terms: int) -> ValueGroup:
    """One grid group x^offset e^(mu x) y(x) at the point's critical time."""
    pref = Prefactor.one()
    if mu != 0:
        # exp(mu * t0): t0 is an exact polynomial in w, so its exponential is
        # a monomial times an e^(rational) tag via the imported identities
        arg = SurrealNF.monomial(SurrealNF.from_rational(pt.t0_lead_exp), mu * pt.t0_lead_coef) * binomial_tilt(
            pt.u, Fraction(1), terms + WINDOW_SLACK
        )
        grp = exp_nf(arg)
        pref = pref * grp.prefactor
        expstream = grp.stream
    else:
        expstream = LazyNF.from_nf(one())
    series_pref, series_stream = eval_series_at(ps, pt, offset, terms + WINDOW_SLACK)
    stream = _mul_streams(expstream, series_stream, terms)
    return ValueGroup(pref * series_pref, stream)


def _mul_streams(a: LazyNF, b: LazyNF, terms: int) -> LazyNF:
    """Product of two streams when one of them is finitely supported."""
    if a.is_finite_known() or a.term(64) is None:
        finite, lazy = a, b
    elif b.is_finite_known() or b.term(64) is None:
        finite, lazy = b, a
    else:
        raise UnsupportedPointError("product of two infinite streams is out of scope")
    parts = list(iter(finite))

    def gen():
        # merge finitely many shifted copies of the lazy stream
        streams = [lazy.scale(c).shift(e) for e, c in parts]
        if not streams:
            return
        acc = streams[0]
        for s in streams[1:]:
            acc = acc + s
        yield from acc

    return LazyNF(gen)


def tau_eval(
    ts: TransseriesT1,
    nu: SurrealNF,
    terms: int = 8,
    *,
    crit_coef: Fraction = Fraction(1),
    crit_power: Fraction = Fraction(1),
    ln2pi_coef: Fraction = Fraction(0),
) -> SurrealValue:
    """Evaluate a T1 transseries (in its critical time) at nu = r*w + s."""
    pt = analyze_point(nu, crit_coef=crit_coef, crit_power=crit_power)
    value = SurrealValue.zero()
    for grp in groups_of(ts):
        vg = tau_eval_group(grp.mu, grp.offset, grp.series, pt, terms)
        value = value + SurrealValue([vg])
    lp = ts.log
    if not lp.is_zero():
        if pt.u.is_zero() and pt.t0_lead_exp == 1 and Fraction(crit_coef) == 1:
            t0 = SurrealNF.monomial(one(), pt.t0_lead_coef)
        else:
            raise UnsupportedPointError("log parts are only evaluated in the plain time variable")
        log_main, log_const = log_of_leader(one(), pt.t0_lead_coef)
        # log(t0) = log w + ln(r); polynomials in t0 are exact normal forms
        pvals = _poly_at(lp.P, t0)
        value = value + SurrealValue.from_nf(pvals * log_main)
        if log_const is not None:
            value = value + SurrealValue([ValueGroup(log_const, LazyNF.from_nf(pvals))])
        value = value + SurrealValue.from_nf(_poly_at(lp.Q, t0))
        rsum = SurrealNF.zero()
        for l in range(1, len(lp.R) + 1):
            rsum = rsum + SurrealNF.monomial(SurrealNF.from_rational(-l), lp.r_coeff(l)) * _nf_pow_rational(
                pt.t0_lead_coef, -l
            )
        value = value + SurrealValue.from_nf(rsum)
    if ln2pi_coef:
        value = value + SurrealValue(
            [ValueGroup(Prefactor.of(1, ln2pi=1), LazyNF.from_nf(SurrealNF.from_rational(ln2pi_coef)))]
        )
    return value.merged()


def _poly_at(coeffs, t0: SurrealNF) -> SurrealNF:
    out = SurrealNF.zero()
    power = one()
    for c in coeffs:
        out = out + power * c
        power = power * t0
    return out


def _nf_pow_rational(base: Fraction, n: int) -> SurrealNF:
    return SurrealNF.from_rational(base**n)
