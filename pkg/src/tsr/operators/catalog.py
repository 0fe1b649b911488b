"""The worked function catalog: transseries, Borel kernels, oracles.

Each entry pairs a stored transseries (in its critical time) with closed-form
Borel kernels for resummation, an independent high-precision oracle on the
reals, an exact derivative facility for Taylor extensions at finite points,
and documented tail constants.  Entries whose transseries would need an
irrational global scale carry it as a symbolic prefactor; the erfi integral
needs none because Gamma(n+1/2)/(2 sqrt(pi)) is rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

import mpmath as mp

from ..coefficients import (
    airy_ai_coeff,
    airy_bi_coeff,
    airy_u,
    ei_coeff,
    erfi_coeff,
    named_series,
    stirling_coeff,
)
from ..errors import DomainError
from ..resummation import (
    KernelEntry,
    QuadratureConfig,
    coth_kernel,
    eb_sum,
    pole_kernel,
    resolve_default,
    sqrt_branch_kernel,
)
from ..transseries import (
    LogPart,
    PowerSeries,
    TransseriesT1,
    from_minus_term,
    from_plus_term,
    ts_add,
    assemble,
)
from ..transseries.grid import Group
from .prefactor import Prefactor

TaylorTerm = tuple  # ("exact", Prefactor, Fraction) | ("num", mpf)


@dataclass
class CatalogFunction:
    name: str
    transseries: Optional[TransseriesT1]
    oracle: Callable
    taylor_term: Callable  # (x0, k) -> TaylorTerm; x0 Fraction or mpf
    crit_coef: Fraction = Fraction(1)
    crit_power: Fraction = Fraction(1)
    prefactor: Prefactor = field(default_factory=Prefactor.one)
    ln2pi_coef: Fraction = Fraction(0)
    kernels: dict = field(default_factory=dict)  # oracle name -> KernelEntry
    domain_c: Optional[float] = None
    tolerance: float = 1e-10
    tail_constants: tuple = (4.0, 1.0, 0.5)  # documented (c1, c2, c3)
    exact_value: Optional[Callable] = None  # x0 -> (Prefactor, Fraction) | None
    antiderivative_of: Optional[str] = None
    derivative_name: Optional[str] = None
    reflected_name: Optional[str] = None
    compose_exp_of: Optional[str] = None  # entry computed as exp(other entry)

    # -- numerics ---------------------------------------------------------

    def resolver(self, series: PowerSeries) -> Optional[KernelEntry]:
        derived = getattr(series, "derived_kernel", None)
        if derived is not None:
            return derived
        name = getattr(series, "oracle_name", None)
        if name and name in self.kernels:
            return self.kernels[name]
        if series.is_finite():
            return None  # finite sums are their own Borel sums
        return resolve_default(series)

    def critical_time(self, x):
        return (
            mp.mpf(self.crit_coef.numerator)
            / self.crit_coef.denominator
            * mp.mpf(x) ** (mp.mpf(self.crit_power.numerator) / self.crit_power.denominator)
        )

    def eb_value(self, x, cfg: QuadratureConfig = None):
        """Resummation-side value: prefactor * eb_sum at the critical time."""
        cfg = cfg or QuadratureConfig()
        if self.compose_exp_of is not None:
            base = catalog()[self.compose_exp_of]
            inner, err = base.eb_value(x, cfg)
            val = mp.exp(inner)
            return val, abs(val) * err
        with mp.workdps(cfg.precision):
            t = self.critical_time(x)
            val, err = eb_sum(self.transseries, t, cfg, resolver=self.resolver)
            scale = self.prefactor.numeric()
            out = scale * val
            if self.ln2pi_coef:
                out += mp.mpf(self.ln2pi_coef.numerator) / self.ln2pi_coef.denominator * mp.log(2 * mp.pi)
            return out, abs(scale) * err

    def check_domain(self, x):
        if self.domain_c is not None and not mp.mpf(x) > self.domain_c:
            raise DomainError(f"{self.name} is defined on ({self.domain_c}, oo); got {x}")


# -- oracles --------------------------------------------------------------------


def ei_oracle(x):
    """Ei(x) = PV integral(e^s/s, s = -oo..x), by principal-value quadrature.

    Split: the PV over [-1, 1] is integral((e^s - 1)/s) since PV of 1/s
    vanishes; the log endpoint contributes ln(x) for x < 1.
    """
    x = mp.mpf(x)
    if x <= 0:
        raise DomainError("Ei oracle implemented for x > 0")

    def expm1_over(s):
        return mp.expm1(s) / s if s != 0 else mp.mpf(1)

    left = mp.quad(lambda u: -mp.exp(-u) / u, [1, mp.inf])  # integral(-oo..-1)
    if x >= 1:
        mid = mp.quad(expm1_over, [-1, 0, 1])
        right = mp.quad(lambda s: mp.exp(s) / s, [1, x]) if x > 1 else mp.mpf(0)
        return left + mid + right
    mid = mp.quad(expm1_over, [-1, 0, x])
    return left + mid + mp.log(x)


def erfi_integral_oracle(x):
    x = mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    return mp.quad(lambda s: mp.exp(s * s), [0, x])


def _airy_series_step(y0, y1, z0, h, n_terms=60):
    """Taylor step for y'' = z y from z0 to z0 + h."""
    c = [y0, y1]
    for n in range(n_terms):
        prev = c[n - 1] if n >= 1 else mp.mpf(0)
        c.append((z0 * c[n] + prev) / ((n + 1) * (n + 2)))
    val = mp.mpf(0)
    dval = mp.mpf(0)
    for n in reversed(range(len(c))):
        val = val * h + c[n]
        if n >= 1:
            dval = dval * h + n * c[n]
    return val, dval


def _airy_pair(kind: str, z):
    """(y, y') for Ai or Bi at real z, by Taylor-series ODE integration."""
    z = mp.mpf(z)
    if kind == "ai":
        y = mp.mpf(3) ** mp.mpf("-2/3") / mp.gamma(mp.mpf(2) / 3)
        dy = -(mp.mpf(3) ** mp.mpf("-1/3")) / mp.gamma(mp.mpf(1) / 3)
    else:
        y = mp.mpf(3) ** mp.mpf("-1/6") / mp.gamma(mp.mpf(2) / 3)
        dy = mp.mpf(3) ** mp.mpf("1/6") / mp.gamma(mp.mpf(1) / 3)
    z0 = mp.mpf(0)
    step = mp.mpf("0.5")
    remaining = z - z0
    while abs(remaining) > 0:
        h = min(step, abs(remaining)) * mp.sign(remaining)
        y, dy = _airy_series_step(y, dy, z0, h)
        z0 += h
        remaining = z - z0
    return y, dy


def airy_ai_oracle(z):
    return _airy_pair("ai", z)[0]


def airy_bi_oracle(z):
    return _airy_pair("bi", z)[0]


def loggamma_oracle(x):
    x = mp.mpf(x)
    if x <= 0:
        raise DomainError("log Gamma oracle needs x > 0")
    if x == mp.floor(x):
        return mp.log(mp.mpf(factorial(int(x) - 1)))
    return mp.loggamma(x)


def gamma_oracle(x):
    x = mp.mpf(x)
    if x == mp.floor(x) and x > 0:
        return mp.mpf(factorial(int(x) - 1))
    return mp.gamma(x)


# -- derivative facilities --------------------------------------------------------


def _exp_taylor(x0, k) -> TaylorTerm:
    if isinstance(x0, Fraction):
        return ("exact", Prefactor.of(1, e=x0), Fraction(1, factorial(k)))
    return ("num", mp.exp(mp.mpf(x0)) / mp.factorial(k))


def _laurent_diff(q: dict) -> dict:
    """d/dx of sum(c_j x^j) as a sparse dict."""
    out = {}
    for j, c in q.items():
        if j != 0:
            out[j - 1] = out.get(j - 1, Fraction(0)) + j * c
    return out


def _laurent_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for j, c in b.items():
        out[j] = out.get(j, Fraction(0)) + c
    return {j: c for j, c in out.items() if c}


def _laurent_eval(q: dict, x0):
    total = 0 if isinstance(x0, Fraction) else mp.mpf(0)
    for j, c in q.items():
        cc = c if isinstance(x0, Fraction) else mp.mpf(c.numerator) / c.denominator
        total += cc * x0**j
    return total


def _make_exp_rational_taylor(base: dict, exponent_shift: Callable, oracle):
    """Taylor facility for an antiderivative F with F^(k) = e^phi * q_(k-1).

    ``base`` is the polynomial of the FIRST derivative (F' = e^phi * q_1);
    F itself comes from the oracle.  The sign of phi' enters via
    ``exponent_shift`` (q -> q for phi = x, q -> -q for phi = -x).
    """
    cache = [dict(base)]

    def polys(k: int) -> dict:
        while len(cache) < k:
            q = cache[-1]
            cache.append(_laurent_add(_laurent_diff(q), exponent_shift(q)))
        return cache[k - 1]

    def taylor(x0, k) -> TaylorTerm:
        if k == 0:
            return ("num", oracle(x0 if not isinstance(x0, Fraction) else mp.mpf(x0.numerator) / x0.denominator))
        q = polys(k)
        if isinstance(x0, Fraction) and x0 != 0:
            return ("exact", Prefactor.of(1, e=x0), _laurent_eval(q, x0) / factorial(k))
        x0m = mp.mpf(x0) if not isinstance(x0, Fraction) else mp.mpf(x0.numerator) / x0.denominator
        return ("num", mp.exp(x0m) * _laurent_eval(q, x0m) / mp.factorial(k))

    return taylor


def _exp_laurent_taylor(base: dict, sign: int):
    """Taylor facility for f = e^(sign*x) * base(x): f^(k) = e^(sign*x) q_k."""
    cache = [dict(base)]

    def polys(k: int) -> dict:
        while len(cache) <= k:
            q = cache[-1]
            shifted = {j: sign * c for j, c in q.items()}
            cache.append(_laurent_add(_laurent_diff(q), shifted))
        return cache[k]

    def taylor(x0, k) -> TaylorTerm:
        q = polys(k)
        if isinstance(x0, Fraction) and x0 != 0:
            return ("exact", Prefactor.of(1, e=sign * x0), _laurent_eval(q, x0) / factorial(k))
        x0m = mp.mpf(x0) if not isinstance(x0, Fraction) else mp.mpf(x0.numerator) / x0.denominator
        return ("num", mp.exp(sign * x0m) * _laurent_eval(q, x0m) / mp.factorial(k))

    return taylor


def _ei_taylor():
    # Ei' = e^x/x; (e^x q)' = e^x (q + q')
    return _make_exp_rational_taylor({-1: Fraction(1)}, lambda q: q, ei_oracle)


def _erfi_taylor():
    # f' = e^(x^2); (e^(x^2) h)' = e^(x^2) (h' + 2x h)
    cache = [{0: Fraction(1)}]

    def polys(k: int) -> dict:
        while len(cache) < k:
            h = cache[-1]
            two_x_h = {j + 1: 2 * c for j, c in h.items()}
            cache.append(_laurent_add(_laurent_diff(h), two_x_h))
        return cache[k - 1]

    def taylor(x0, k) -> TaylorTerm:
        if k == 0:
            if isinstance(x0, Fraction) and x0 == 0:
                return ("exact", Prefactor.one(), Fraction(0))
            return ("num", erfi_integral_oracle(mp.mpf(float(x0))))
        h = polys(k)
        if isinstance(x0, Fraction):
            return ("exact", Prefactor.of(1, e=x0 * x0), _laurent_eval(h, x0) / factorial(k))
        x0m = mp.mpf(x0)
        return ("num", mp.exp(x0m**2) * _laurent_eval(h, x0m) / mp.factorial(k))

    return taylor


def _airy_taylor(kind: str):
    # y^(k) = a_k y + b_k y' with a_(k+1) = a_k' + z b_k, b_(k+1) = a_k + b_k'
    cache = [({0: Fraction(1)}, {})]

    def pair(k: int):
        while len(cache) <= k:
            a, b = cache[-1]
            zb = {j + 1: c for j, c in b.items()}
            cache.append((_laurent_add(_laurent_diff(a), zb), _laurent_add(a, _laurent_diff(b))))
        return cache[k]

    def taylor(x0, k) -> TaylorTerm:
        a, b = pair(k)
        x0m = mp.mpf(float(x0))
        y, dy = _airy_pair(kind, x0m)
        return ("num", (_laurent_eval(a, x0m) * y + _laurent_eval(b, x0m) * dy) / mp.factorial(k))

    return taylor


def _loggamma_taylor(x0, k) -> TaylorTerm:
    x0m = mp.mpf(float(x0))
    if k == 0:
        return ("num", loggamma_oracle(x0m))
    return ("num", mp.psi(k - 1, x0m) / mp.factorial(k))


def _monomial_taylor(n: int):
    def taylor(x0, k) -> TaylorTerm:
        if k > n:
            return ("exact", Prefactor.one(), Fraction(0))
        coef = Fraction(factorial(n), factorial(k) * factorial(n - k))
        if isinstance(x0, Fraction):
            return ("exact", Prefactor.one(), coef * x0 ** (n - k))
        return ("num", coef.numerator / coef.denominator * mp.mpf(x0) ** (n - k))

    return taylor


# -- entry construction ------------------------------------------------------------


def _series(name: str) -> PowerSeries:
    return named_series(name)


def _exp_entry() -> CatalogFunction:
    ts = from_plus_term(1, 1, PowerSeries.from_coeffs([Fraction(1)]))
    return CatalogFunction(
        name="exp",
        transseries=ts,
        oracle=lambda x: mp.exp(mp.mpf(x)),
        taylor_term=_exp_taylor,
        domain_c=None,
        tolerance=1e-24,
        tail_constants=(1.0, 1.0, 0.0),
        exact_value=lambda q: (Prefactor.of(1, e=q), Fraction(1)),
        derivative_name="exp",
        reflected_name="exp_neg",
    )


def _exp_neg_entry() -> CatalogFunction:
    ts = from_minus_term(1, 1, PowerSeries.from_coeffs([Fraction(1)]))
    return CatalogFunction(
        name="exp_neg",
        transseries=ts,
        oracle=lambda x: mp.exp(-mp.mpf(x)),
        taylor_term=_exp_laurent_taylor({0: Fraction(1)}, -1),
        domain_c=None,
        tolerance=1e-24,
        tail_constants=(1.0, 1.0, 0.0),
        exact_value=lambda q: (Prefactor.of(1, e=-q), Fraction(1)),
    )


def _ei_integrand_entry() -> CatalogFunction:
    ts = from_plus_term(1, 0, PowerSeries.from_coeffs([Fraction(1)]))
    return CatalogFunction(
        name="ei_integrand",
        transseries=ts,
        oracle=lambda x: mp.exp(mp.mpf(x)) / mp.mpf(x),
        taylor_term=_exp_laurent_taylor({-1: Fraction(1)}, +1),
        domain_c=0.0,
        tolerance=1e-24,
        tail_constants=(1.0, 1.0, 0.0),
    )


def _ei_entry() -> CatalogFunction:
    ts = from_plus_term(1, 0, _series("ei"))
    return CatalogFunction(
        name="ei",
        transseries=ts,
        oracle=ei_oracle,
        taylor_term=_ei_taylor(),
        kernels={"ei": KernelEntry(pole_kernel(1), m=1)},
        domain_c=0.0,
        tolerance=1e-10,
        # |man P B y| = |log|1-p|| <= 4 e^(p/4) laterally; x above 1/4
        tail_constants=(4.0, 1.0, 0.25),
        antiderivative_of="ei_integrand",
        derivative_name="ei_integrand",
    )


def _erfi_integrand_entry() -> CatalogFunction:
    ts = from_plus_term(1, 1, PowerSeries.from_coeffs([Fraction(1)]))
    return CatalogFunction(
        name="erfi_integrand",
        transseries=ts,
        crit_power=Fraction(2),
        oracle=lambda x: mp.exp(mp.mpf(x) ** 2),
        taylor_term=_erfi_integrand_taylor(),
        domain_c=None,
        tolerance=1e-24,
        tail_constants=(1.0, 1.0, 0.0),
    )


def _erfi_integrand_taylor():
    cache = [{0: Fraction(1)}]

    def polys(k: int) -> dict:
        while len(cache) <= k:
            h = cache[-1]
            two_x_h = {j + 1: 2 * c for j, c in h.items()}
            cache.append(_laurent_add(_laurent_diff(h), two_x_h))
        return cache[k]

    def taylor(x0, k) -> TaylorTerm:
        h = polys(k)
        if isinstance(x0, Fraction):
            return ("exact", Prefactor.of(1, e=x0 * x0), _laurent_eval(h, x0) / factorial(k))
        x0m = mp.mpf(x0)
        return ("num", mp.exp(x0m**2) * _laurent_eval(h, x0m) / mp.factorial(k))

    return taylor


def _erfi_integral_entry() -> CatalogFunction:
    ts = from_plus_term(1, Fraction(1, 2), _series("erfi"))
    return CatalogFunction(
        name="erfi_integral",
        transseries=ts,
        crit_power=Fraction(2),
        oracle=erfi_integral_oracle,
        taylor_term=_erfi_taylor(),
        kernels={"erfi": KernelEntry(sqrt_branch_kernel(1, Fraction(1, 2)), m=0)},
        domain_c=None,
        tolerance=1e-12,
        # averaged kernel is supported on [0, 1]: c3 = 0
        tail_constants=(1.0, 1.0, 0.0),
        antiderivative_of="erfi_integrand",
        derivative_name="erfi_integrand",
        exact_value=lambda q: (Prefactor.one(), Fraction(0)) if q == 0 else None,
    )


def _airy_entry(kind: str) -> CatalogFunction:
    coeff = airy_ai_coeff if kind == "ai" else airy_bi_coeff
    series = PowerSeries.from_fn(coeff, known_order=1)
    series.oracle_name = f"airy_u_{kind}"
    if kind == "ai":
        ts = from_minus_term(1, Fraction(5, 6), series)
        pref = Prefactor.of(Fraction(1, 2), pi=Fraction(-1, 2)) * Prefactor.rational_power(
            Fraction(2, 3), Fraction(1, 6)
        )
        oracle = airy_ai_oracle
    else:
        ts = from_plus_term(1, Fraction(5, 6), series)
        pref = Prefactor.of(1, pi=Fraction(-1, 2)) * Prefactor.rational_power(Fraction(2, 3), Fraction(1, 6))
        oracle = airy_bi_oracle
    return CatalogFunction(
        name=f"airy_{kind}",
        transseries=ts,
        crit_coef=Fraction(2, 3),
        crit_power=Fraction(3, 2),
        prefactor=pref,
        oracle=oracle,
        taylor_term=_airy_taylor(kind),
        kernels={f"airy_u_{kind}": resolve_default(series, order=26, degrees=(12, 12))},
        domain_c=None,
        tolerance=2e-6 if kind == "bi" else 1e-8,
        tail_constants=(2.0, 1.0, 1.0),
    )


def _loggamma_entry() -> CatalogFunction:
    ts = assemble(
        [Group(Fraction(0), Fraction(0), _series("stirling"))],
        LogPart(P=(Fraction(-1, 2), Fraction(1)), Q=(Fraction(0), Fraction(-1))),
    )
    return CatalogFunction(
        name="loggamma",
        transseries=ts,
        ln2pi_coef=Fraction(1, 2),
        oracle=loggamma_oracle,
        taylor_term=_loggamma_taylor,
        kernels={"stirling": KernelEntry(coth_kernel(), m=0)},
        domain_c=0.0,
        tolerance=1e-10,
        # |(p coth(p/2) - 2)/(2 p^2)| <= 1/12 + 1/(2p): subexponential
        tail_constants=(1.0, 1.0, 0.0),
    )


def _gamma_entry() -> CatalogFunction:
    return CatalogFunction(
        name="gamma",
        transseries=None,
        oracle=gamma_oracle,
        taylor_term=_gamma_taylor,
        domain_c=0.0,
        tolerance=1e-10,
        compose_exp_of="loggamma",
    )


def _gamma_taylor(x0, k) -> TaylorTerm:
    x0m = mp.mpf(float(x0))
    return ("num", mp.diff(mp.gamma, x0m, k) / mp.factorial(k))


def monomial_entry(n: int) -> CatalogFunction:
    """x^n as a catalog entry (polynomials live in the log part's Q)."""
    if n < 0:
        raise ValueError("use series entries for inverse powers")
    Q = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
    ts = assemble([], LogPart(Q=Q))
    return CatalogFunction(
        name=f"monomial_{n}",
        transseries=ts,
        oracle=lambda x, n=n: mp.mpf(x) ** n,
        taylor_term=_monomial_taylor(n),
        domain_c=None,
        tolerance=1e-24,
        tail_constants=(1.0, 1.0, 0.0),
        exact_value=lambda q, n=n: (Prefactor.one(), q**n),
    )


def _exp_neg_over_x_entry() -> CatalogFunction:
    ts = from_minus_term(1, 0, PowerSeries.from_coeffs([Fraction(1)]))
    return CatalogFunction(
        name="exp_neg_over_x",
        transseries=ts,
        oracle=lambda x: mp.exp(-mp.mpf(x)) / mp.mpf(x),
        taylor_term=_exp_laurent_taylor({-1: Fraction(1)}, -1),
        domain_c=0.0,
        tolerance=1e-24,
        tail_constants=(1.0, 1.0, 0.0),
    )


_CATALOG: Optional[dict[str, CatalogFunction]] = None


def catalog() -> dict[str, CatalogFunction]:
    """The immutable registry of worked functions."""
    global _CATALOG
    if _CATALOG is None:
        entries = [
            _exp_entry(),
            _exp_neg_entry(),
            _ei_integrand_entry(),
            _ei_entry(),
            _erfi_integrand_entry(),
            _erfi_integral_entry(),
            _airy_entry("ai"),
            _airy_entry("bi"),
            _loggamma_entry(),
            _gamma_entry(),
            _exp_neg_over_x_entry(),
        ]
        _CATALOG = {e.name: e for e in entries}
    return _CATALOG


def catalog_manifest() -> dict:
    """JSON-ready manifest: per entry the kernels, constants, and tolerances."""
    from ..transseries import ts_to_json

    out = {}
    for name, e in catalog().items():
        out[name] = {
            "transseries": ts_to_json(e.transseries) if e.transseries is not None else None,
            "critical_time": {"coef": str(e.crit_coef), "power": str(e.crit_power)},
            "prefactor": e.prefactor.render(),
            "ln2pi_coef": str(e.ln2pi_coef),
            "kernels": {k: type(v.kernel).__name__ for k, v in e.kernels.items()},
            "regularization_m": {k: v.m for k, v in e.kernels.items()},
            "tail_constants": list(e.tail_constants),
            "domain_c": e.domain_c,
            "tolerance": e.tolerance,
            "composes": e.compose_exp_of,
        }
    return out
