"""Exact coefficient sequences for the worked function catalog.

Everything here is a rational-number recurrence: factorial growth for the
exponential-integral series, the binomial-halving erfi coefficients, the
Airy u_k recurrence, Bernoulli numbers and the Stirling tail they generate.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import comb, factorial

from .transseries.series import KIND_CLOSED, PowerSeries


@functools.lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, via sum(binom(n+1, j) B_j, j<=n) = 0."""
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        total += comb(n + 1, j) * bernoulli(j)
    return -total / (n + 1)


@functools.lru_cache(maxsize=None)
def airy_u(k: int) -> Fraction:
    """DLMF 9.7.2: u_0 = 1, u_k = u_(k-1) (6k-5)(6k-3)(6k-1) / (216 k (2k-1))."""
    if k == 0:
        return Fraction(1)
    return airy_u(k - 1) * Fraction((6 * k - 5) * (6 * k - 3) * (6 * k - 1), 216 * k * (2 * k - 1))


def ei_coeff(l: int) -> Fraction:
    """Sum(k! x^(-k-1)): c_l = (l-1)!."""
    return Fraction(factorial(l - 1))


def erfi_coeff(l: int) -> Fraction:
    """Critical-time series of the erfi integral: c_l = (2n)!/(2 4^n n!), n = l-1.

    These are the rationalized Gamma(n + 1/2)/(2 sqrt(pi)) forced by the
    leading 1/(2x) term of the integration-by-parts expansion.
    """
    n = l - 1
    return Fraction(factorial(2 * n), 2 * 4**n * factorial(n))


def stirling_coeff(l: int) -> Fraction:
    """Stirling tail of log Gamma: B_(2n+2)/((2n+1)(2n+2)) at x^-(2n+1)."""
    if l % 2 == 0:
        return Fraction(0)
    n = (l - 1) // 2
    return bernoulli(2 * n + 2) / ((2 * n + 1) * (2 * n + 2))


def airy_ai_coeff(l: int) -> Fraction:
    """Alternating u-series of Ai in the critical time: c_l = (-1)^(l-1) u_(l-1)."""
    return (-1) ** (l - 1) * airy_u(l - 1)


def airy_bi_coeff(l: int) -> Fraction:
    return airy_u(l - 1)


def coth_kernel_coeff(k: int) -> Fraction:
    """Taylor coefficient of (p coth(p/2) - 2) / (2 p^2) at p^k (k >= 0)."""
    if k % 2 == 1:
        return Fraction(0)
    n = k // 2
    return bernoulli(2 * n + 2) / Fraction(factorial(2 * n + 2))


def named_series(name: str) -> PowerSeries:
    try:
        fn = _NAMED[name]
    except KeyError:
        raise KeyError(f"unknown series oracle #{name}") from None
    ps = PowerSeries.from_fn(fn, kind=KIND_CLOSED, known_order=1)
    ps.oracle_name = name
    return ps


_NAMED = {
    "ei": ei_coeff,
    "erfi": erfi_coeff,
    "airy_u": airy_bi_coeff,
    "airy_u_alt": airy_ai_coeff,
    "stirling": stirling_coeff,
}

NAMED_SERIES = tuple(sorted(_NAMED))
