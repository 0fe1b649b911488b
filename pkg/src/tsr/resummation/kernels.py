"""Borel-plane functions: closed-form kernels, entire sums, Pade approximants.

A kernel provides exact small-p Taylor coefficients, lateral values above
and below the positive axis, the averaged (half-sum) value used by the
Laplace machinery, and, where a rule exists, its antiderivative from 0
(the P operator).  Closed forms are linear combinations of

    v^a (log v)^b,   v = 1 - p/s

around a single positive singularity s, plus a polynomial; that family is
closed under P, which is how pole kernels regularize to logs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import mpmath as mp

from ..errors import DegenerateTableError, NotRegularizableError, SingularPointError
from .borel import BorelPoly, p_integrate_poly


@dataclass(frozen=True)
class Singularity:
    location: Fraction
    kind: str  # "pole" | "branch" | "log"
    exponent: Fraction = Fraction(-1)  # power of v for pole/branch; 0 for log


class BorelFunction:
    """Interface shared by every Borel-plane representation."""

    #: (c1, c3) with |F| <= c1 exp(c3 p) laterally; c3 bounds the Laplace domain
    growth: tuple[float, float] = (1.0, 0.0)

    def singularities(self) -> list[Singularity]:
        return []

    def taylor(self, K: int) -> list[Fraction]:
        """Exact small-p coefficients f_0..f_K (rational kernels only)."""
        raise NotImplementedError

    def value(self, p):
        """Real value off the singularities, below the first singularity."""
        raise NotImplementedError

    def lateral(self, p, side: int):
        """Continuation at p +- i0 (side = +1 above, -1 below)."""
        return mp.mpc(self.value(p))

    def averaged(self, p):
        """Half-sum of the lateral continuations (single-ray average)."""
        hi = self.lateral(p, +1)
        lo = self.lateral(p, -1)
        return (hi + lo).real / 2

    def p_integral(self, m: int = 1) -> "BorelFunction":
        raise NotRegularizableError(f"{type(self).__name__} has no P rule")

    def pv_residue(self, s: Fraction):
        """A with F(p) ~ A/(s - p) near the simple pole s, else 0."""
        return mp.mpf(0)


class PolyKernel(BorelFunction):
    def __init__(self, poly: BorelPoly, growth=(1.0, 0.0)):
        self.poly = poly
        self.growth = growth

    def taylor(self, K: int) -> list[Fraction]:
        return [self.poly.coeff(k) for k in range(K + 1)]

    def value(self, p):
        return mp.mpf(self.poly(mp.mpf(p)))

    def laplace_exact(self, x):
        """L[sum b_k p^k] = sum b_k k! / x^(k+1), exactly."""
        return sum(
            (_c2mp(c) * mp.factorial(k) / x ** (k + 1) for k, c in enumerate(self.poly.coeffs)),
            mp.mpf(0),
        )

    def p_integral(self, m: int = 1) -> "PolyKernel":
        return PolyKernel(p_integrate_poly(self.poly, m), self.growth)


class EntireSeriesKernel(BorelFunction):
    """Convergent Borel transform evaluated by direct summation."""

    def __init__(self, coeff_fn: Callable[[int], Fraction], growth=(1.0, 1.0), name: str = ""):
        self.coeff_fn = coeff_fn
        self.growth = growth
        self.name = name

    def taylor(self, K: int) -> list[Fraction]:
        return [Fraction(self.coeff_fn(k)) for k in range(K + 1)]

    def value(self, p):
        p = mp.mpf(p)
        total = mp.mpf(0)
        term_bound = mp.mpf(10) ** (-mp.mp.dps - 5)
        pk = mp.mpf(1)
        for k in range(10000):
            c = self.coeff_fn(k)
            t = mp.mpf(c.numerator) / c.denominator * pk if isinstance(c, Fraction) else c * pk
            total += t
            pk *= p
            if k > 4 and abs(t) < term_bound * (1 + abs(total)):
                return total
        raise ArithmeticError("entire kernel summation did not converge")

    def p_integral(self, m: int = 1) -> "EntireSeriesKernel":
        if m == 0:
            return self

        def f(k: int) -> Fraction:
            return Fraction(self.coeff_fn(k - 1)) / k if k >= 1 else Fraction(0)

        return EntireSeriesKernel(f, self.growth, self.name and f"P({self.name})").p_integral(m - 1)


@dataclass(frozen=True)
class _Term:
    coef: Fraction
    a: Fraction  # power of v = 1 - p/s
    b: int  # log exponent, 0 or 1


class ClosedFormKernel(BorelFunction):
    """sum(c * v^a * log(v)^b) + polynomial, v = 1 - p/s, one singularity s."""

    def __init__(self, s: Fraction, terms: Sequence[tuple], poly: BorelPoly = BorelPoly(()), growth=(2.0, 1.0), name: str = ""):
        self.s = Fraction(s)
        if self.s == 0:
            raise ValueError("the reference point cannot be the origin")
        self.terms = tuple(_Term(Fraction(c), Fraction(a), int(b)) for c, a, b in terms)
        if any(t.b not in (0, 1) for t in self.terms):
            raise ValueError("only first powers of log are representable")
        self.poly = poly
        self.growth = growth
        self.name = name

    def singularities(self) -> list[Singularity]:
        if self.s < 0:
            return []  # v = 1 - p/s stays positive on the Laplace ray
        worst = min((t.a for t in self.terms if t.a < 0 or t.b), default=None)
        if worst is None and not any(t.b for t in self.terms):
            return []
        if worst is not None and worst < 0:
            kind = "pole" if worst.denominator == 1 else "branch"
            return [Singularity(self.s, kind, worst)]
        return [Singularity(self.s, "log", Fraction(0))]

    # -- values ---------------------------------------------------------------

    def _v(self, p):
        return 1 - mp.mpf(p) / _c2mp(self.s)

    def value(self, p):
        v = self._v(p)
        if v == 0:
            raise SingularPointError(f"evaluation at the singularity p = {self.s}")
        if v < 0:
            return self.averaged(p)
        out = mp.mpf(self.poly(mp.mpf(p)))
        logv = mp.log(v) if any(t.b for t in self.terms) else None
        for t in self.terms:
            base = mp.mpf(v) ** _c2mp(t.a)
            out += _c2mp(t.coef) * base * (logv ** t.b if t.b else 1)
        return out

    def lateral(self, p, side: int):
        """v < 0 continuation: arg v = -side * pi (p + i0 pushes v below its cut)."""
        v = self._v(p)
        if v == 0:
            raise SingularPointError(f"evaluation at the singularity p = {self.s}")
        out = mp.mpc(self.poly(mp.mpf(p)))
        if v > 0:
            logv = mp.log(v)
            for t in self.terms:
                out += _c2mp(t.coef) * mp.mpf(v) ** _c2mp(t.a) * (logv ** t.b if t.b else 1)
            return out
        mag = abs(v)
        logv = mp.log(mag) - side * mp.mpc(0, mp.pi)
        for t in self.terms:
            base = mp.mpf(mag) ** _c2mp(t.a) * mp.exp(-side * mp.mpc(0, mp.pi) * _c2mp(t.a))
            out += _c2mp(t.coef) * base * (logv ** t.b if t.b else 1)
        return out

    def averaged(self, p):
        """Closed-form half-sum: the cos(pi a)/sin(pi a) weights are exact.

        Evaluating Re((hi+lo)/2) numerically would multiply huge |v|^a values
        by a rounded cos(pi a); computing the weights with cospi/sinpi keeps
        vanishing averages (a = -1/2) exactly zero.
        """
        v = self._v(p)
        if v == 0:
            raise SingularPointError(f"evaluation at the singularity p = {self.s}")
        if v > 0:
            return self.value(p)
        mag = abs(v)
        logm = mp.log(mag) if any(t.b for t in self.terms) else None
        out = mp.mpf(self.poly(mp.mpf(p)))
        for t in self.terms:
            a = _c2mp(t.a)
            base = mp.mpf(mag) ** a
            if t.b == 0:
                out += _c2mp(t.coef) * base * mp.cospi(a)
            else:
                out += _c2mp(t.coef) * base * (mp.cospi(a) * logm - mp.pi * mp.sinpi(a))
        return out

    def usub_value(self, u):
        """F(s - u^2) * 2u for the branch window substitution, cancellation-free."""
        s = _c2mp(self.s)
        p = s - u * u
        out = mp.mpf(self.poly(p)) * 2 * u
        v = u * u / s  # positive approach side
        logv = mp.log(v) if any(t.b for t in self.terms) else None
        for t in self.terms:
            a = _c2mp(t.a)
            # v^a * 2u = s^-a * u^(2a+1) * 2, grouped to avoid 1/u blowup
            base = mp.mpf(s) ** (-a) * u ** (2 * a + 1) * 2
            out += _c2mp(t.coef) * base * (logv ** t.b if t.b else 1)
        return out

    def taylor(self, K: int) -> list[Fraction]:
        out = [self.poly.coeff(k) for k in range(K + 1)]
        for t in self.terms:
            tc = _vpow_taylor(t.a, t.b, K)  # coefficients in w = p/s
            for k in range(K + 1):
                out[k] += t.coef * tc[k] / self.s**k
        return out

    def pv_residue(self, s: Fraction):
        if Fraction(s) != self.s:
            return mp.mpf(0)
        # c * v^-1 = c * s / (s - p)
        total = mp.mpf(0)
        for t in self.terms:
            if t.a == -1 and t.b == 0:
                total += _c2mp(t.coef) * _c2mp(self.s)
        return total

    def worst_exponent(self) -> Optional[Fraction]:
        return min((t.a for t in self.terms), default=None)

    def p_integral(self, m: int = 1) -> "ClosedFormKernel":
        if m == 0:
            return self
        s = self.s
        new_terms: list[tuple] = []
        const = Fraction(0)
        for t in self.terms:
            c, a, b = t.coef, t.a, t.b
            if b == 0 and a != -1:
                # int_0^p v^a dt = s (1 - v^(a+1)) / (a+1)
                const += c * s / (a + 1)
                new_terms.append((-c * s / (a + 1), a + 1, 0))
            elif b == 0 and a == -1:
                new_terms.append((-c * s, Fraction(0), 1))
            elif b == 1 and a != -1:
                # int_0^p v^a log v dt = s(-1/(a+1)^2 - v^(a+1) log v/(a+1) + v^(a+1)/(a+1)^2)
                const += -c * s / (a + 1) ** 2
                new_terms.append((-c * s / (a + 1), a + 1, 1))
                new_terms.append((c * s / (a + 1) ** 2, a + 1, 0))
            else:
                raise NotRegularizableError("no rule for v^-1 log v")
        poly = p_integrate_poly(self.poly, 1) + BorelPoly((const,))
        # |P F| <= c1 p e^(c3 p) <= 4 c1 e^(max(c3, 1/4) p)
        growth = (4 * self.growth[0], max(self.growth[1], 0.25))
        out = ClosedFormKernel(s, new_terms, poly, growth, self.name and f"P({self.name})")
        return out.p_integral(m - 1)


def _c2mp(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def _vpow_taylor(a: Fraction, b: int, K: int) -> list[Fraction]:
    """Exact Taylor of w -> (1-w)^a log(1-w)^b in powers of w."""
    binom = [Fraction(1)]
    for k in range(1, K + 1):
        binom.append(binom[-1] * (a - (k - 1)) / k)
    pow_series = [binom[k] * Fraction((-1) ** k) for k in range(K + 1)]  # (1-w)^a
    if b == 0:
        return pow_series
    log_series = [Fraction(0)] + [Fraction(-1, j) for j in range(1, K + 1)]
    out = [Fraction(0)] * (K + 1)
    for i in range(K + 1):
        for j in range(K + 1 - i):
            out[i + j] += pow_series[i] * log_series[j]
    return out


class PadeKernel(BorelFunction):
    """Rational approximant; detected positive real poles become singularities."""

    def __init__(self, num: Sequence[Fraction], den: Sequence[Fraction], growth=(2.0, 1.0), name: str = ""):
        self.num = tuple(Fraction(c) for c in num)
        self.den = tuple(Fraction(c) for c in den)
        self.growth = growth
        self.name = name
        self._poles: Optional[list] = None

    def real_positive_poles(self) -> list:
        if self._poles is None:
            with mp.workdps(mp.mp.dps + 10):
                roots = mp.polyroots([_c2mp(c) for c in reversed(self.den)], maxsteps=200, extraprec=80)
            poles = []
            for r in roots:
                if abs(r.imag) < mp.mpf(10) ** (-15) and r.real > 0:
                    poles.append(r.real)
            self._poles = sorted(poles)
        return self._poles

    def singularities(self) -> list[Singularity]:
        # poles are reported at double precision; exact locations are unknown
        return [
            Singularity(Fraction(repr(float(p))), "pole", Fraction(-1)) for p in self.real_positive_poles()
        ]

    def taylor(self, K: int) -> list[Fraction]:
        out: list[Fraction] = []
        d0 = self.den[0]
        if d0 == 0:
            raise DegenerateTableError("denominator vanishes at the origin")
        for k in range(K + 1):
            total = self.num[k] if k < len(self.num) else Fraction(0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                total -= self.den[j] * out[k - j]
            out.append(total / d0)
        return out

    def value(self, p):
        p = mp.mpf(p)
        num = _horner(self.num, p)
        den = _horner(self.den, p)
        if den == 0:
            raise SingularPointError(f"Pade pole at p = {p}")
        return num / den

    def lateral(self, p, side: int):
        return mp.mpc(self.value(p))

    def pv_residue(self, s):
        # F ~ A/(s-p): A = -num(s)/den'(s)
        s = _c2mp(Fraction(s)) if isinstance(s, Fraction) else mp.mpf(s)
        num = _horner(self.num, s)
        dden = _horner(tuple((k + 1) * c for k, c in enumerate(self.den[1:])), s)
        if dden == 0:
            raise DegenerateTableError("double pole in Pade denominator")
        return num / dden * -1


def _horner(coeffs, p):
    out = mp.mpf(0)
    for c in reversed(coeffs):
        out = out * p + (_c2mp(c) if isinstance(c, Fraction) else c)
    return out


class ScaledKernel(BorelFunction):
    """c * inner, for exact rational prefactors."""

    def __init__(self, c: Fraction, inner: BorelFunction):
        self.c = Fraction(c)
        self.inner = inner
        self.growth = (abs(float(c)) * inner.growth[0], inner.growth[1])

    def singularities(self):
        return self.inner.singularities()

    def taylor(self, K):
        return [self.c * v for v in self.inner.taylor(K)]

    def value(self, p):
        return _c2mp(self.c) * self.inner.value(p)

    def lateral(self, p, side):
        return _c2mp(self.c) * self.inner.lateral(p, side)

    def pv_residue(self, s):
        return _c2mp(self.c) * self.inner.pv_residue(s)

    def p_integral(self, m=1):
        return ScaledKernel(self.c, self.inner.p_integral(m))


# -- canonical kernels ---------------------------------------------------------


def pole_kernel(location=1, scale=1) -> ClosedFormKernel:
    """scale / (1 - p/location): the factorially divergent model kernel.

    The averaged value decays like 1/p beyond the pole, so the lateral tail
    bound uses c3 = 0 with c1 covering the overshoot just past the window.
    """
    return ClosedFormKernel(
        Fraction(location), [(Fraction(scale), Fraction(-1), 0)], growth=(4.0 * abs(float(scale)), 0.0), name="pole"
    )


def sqrt_branch_kernel(location=1, scale=Fraction(1, 2)) -> ClosedFormKernel:
    """scale * (1 - p/location)^(-1/2); the average vanishes beyond the cut."""
    return ClosedFormKernel(
        Fraction(location), [(Fraction(scale), Fraction(-1, 2), 0)], growth=(abs(float(scale)), 0.0), name="sqrt-branch"
    )


def log_kernel(location=1, scale=1) -> ClosedFormKernel:
    """-scale * log(1 - p/location) (the P-integral of the pole kernel)."""
    return ClosedFormKernel(
        Fraction(location), [(-Fraction(scale), Fraction(0), 1)], growth=(4.0 * abs(float(scale)), 0.25), name="log"
    )


def coth_kernel() -> EntireSeriesKernel:
    """(p coth(p/2) - 2) / (2 p^2): the Binet kernel of log Gamma."""
    from ..coefficients import coth_kernel_coeff

    k = EntireSeriesKernel(coth_kernel_coeff, growth=(1.0, 0.0), name="coth")
    k.value = _coth_value  # type: ignore[method-assign]
    return k


def _coth_value(p):
    p = mp.mpf(p)
    if abs(p) < mp.mpf("0.05"):
        # Taylor near 0 avoids cancellation
        from ..coefficients import coth_kernel_coeff

        total = mp.mpf(0)
        for k in range(0, 24, 2):
            c = coth_kernel_coeff(k)
            total += _c2mp(c) * p**k
        return total
    return (p * mp.coth(p / 2) - 2) / (2 * p**2)


def pade_continue(b: BorelPoly, degrees: tuple[int, int], *, tol: Fraction = Fraction(0)) -> PadeKernel:
    """Exact-rational (m, n) Pade approximant to the polynomial b.

    Solves the Toeplitz system for the denominator over the rationals and
    raises DegenerateTableError when the system is singular.
    """
    m, n = degrees
    if m + n + 1 > len(b.coeffs):
        raise DegenerateTableError(f"need {m + n + 1} coefficients, have {len(b.coeffs)}")
    c = [b.coeff(k) for k in range(m + n + 1)]
    # denominator: sum(d_j c_(m+i-j), j=0..n) = 0 for i = 1..n, d_0 = 1
    rows = []
    rhs = []
    for i in range(1, n + 1):
        rows.append([c[m + i - j] if 0 <= m + i - j <= m + n else Fraction(0) for j in range(1, n + 1)])
        rhs.append(-c[m + i])
    d_tail = _solve_exact(rows, rhs)
    den = [Fraction(1)] + d_tail
    num = []
    for k in range(m + 1):
        num.append(sum(den[j] * c[k - j] for j in range(0, min(k, n) + 1)))
    return PadeKernel(num, den, name=f"pade({m},{n})")


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    a = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DegenerateTableError("singular Pade system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]
