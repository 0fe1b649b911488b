"""Formal power series sum(c_l * x^-l, l >= 1) with exact rational coefficients.

Coefficients come from a memoized oracle, so recurrence-backed and
closed-form series share one representation with explicit finite lists.
All operations are exact; memoization is recomputation-safe.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..errors import UndecidableSupport

KIND_FINITE = "finite"
KIND_CLOSED = "closed-form"
KIND_RECURRENCE = "recurrence-backed"

#: scan bound used when a series of unknown order must reveal a nonzero term
DEFAULT_ORDER_SCAN = 64


class PowerSeries:
    """O(1/x) series with coefficient oracle ``coeff(l)`` for l >= 1."""

    def __init__(
        self,
        coeff_fn: Callable[[int], Fraction],
        *,
        kind: str = KIND_CLOSED,
        length: Optional[int] = None,
        known_order: Optional[int] = None,
    ):
        self._fn = coeff_fn
        self._cache: list[Fraction] = []
        self._lock = threading.Lock()  # memoization is share-safe
        self.kind = kind
        self.length = length  # greatest possibly-nonzero index for finite series
        self.known_order = known_order

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "PowerSeries":
        return cls(lambda l: Fraction(0), kind=KIND_FINITE, length=0, known_order=None)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Fraction]) -> "PowerSeries":
        """Explicit leading coefficients c_1..c_n, the rest zero."""
        coeffs = [Fraction(c) for c in coeffs]
        order = next((i + 1 for i, c in enumerate(coeffs) if c != 0), None)
        return cls(
            lambda l: coeffs[l - 1] if 1 <= l <= len(coeffs) else Fraction(0),
            kind=KIND_FINITE,
            length=len(coeffs),
            known_order=order,
        )

    @classmethod
    def monomial(cls, l: int, c=1) -> "PowerSeries":
        coeffs = [Fraction(0)] * l
        coeffs[l - 1] = Fraction(c)
        return cls.from_coeffs(coeffs)

    @classmethod
    def from_fn(cls, fn: Callable[[int], Fraction], *, kind: str = KIND_CLOSED, known_order: Optional[int] = None) -> "PowerSeries":
        return cls(fn, kind=kind, known_order=known_order)

    # -- coefficient access ---------------------------------------------------

    def coeff(self, l: int) -> Fraction:
        if l < 1:
            raise IndexError("series indices start at 1")
        if self.length is not None and l > self.length:
            return Fraction(0)
        if len(self._cache) < l:
            with self._lock:
                while len(self._cache) < l:
                    self._cache.append(Fraction(self._fn(len(self._cache) + 1)))
        return self._cache[l - 1]

    def coeffs(self, n: int) -> list[Fraction]:
        return [self.coeff(l) for l in range(1, n + 1)]

    def is_finite(self) -> bool:
        return self.length is not None

    def first_nonzero(self, bound: int = DEFAULT_ORDER_SCAN) -> Optional[int]:
        """Smallest l with c_l != 0, scanning up to ``bound``.

        Returns None when the series is finite and identically zero; raises
        UndecidableSupport when an oracle-backed series shows no nonzero
        coefficient within the bound.
        """
        if self.known_order is not None:
            if self.coeff(self.known_order) != 0:
                return self.known_order
        top = self.length if self.length is not None else bound
        for l in range(1, top + 1):
            if self.coeff(l) != 0:
                return l
        if self.length is not None:
            return None
        raise UndecidableSupport(f"no nonzero coefficient within scan bound {bound}")

    def is_zero_upto(self, n: int) -> bool:
        return all(self.coeff(l) == 0 for l in range(1, n + 1))

    def eq_to_order(self, other: "PowerSeries", n: int) -> bool:
        return self.coeffs(n) == other.coeffs(n)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        length = None
        if self.length is not None and other.length is not None:
            length = max(self.length, other.length)
        return PowerSeries(
            lambda l: self.coeff(l) + other.coeff(l),
            kind=_join_kind(self, other),
            length=length,
        )

    def __neg__(self) -> "PowerSeries":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def scale(self, c) -> "PowerSeries":
        c = Fraction(c)
        if c == 0:
            return PowerSeries.zero()
        if c == 1:
            return self
        return PowerSeries(
            lambda l: c * self.coeff(l),
            kind=self.kind,
            length=self.length,
            known_order=self.known_order,
        )

    def shift_down(self, d: int) -> "PowerSeries":
        """Multiply by x^-d (d >= 0): coefficients move to higher indices."""
        if d == 0:
            return self
        return PowerSeries(
            lambda l: self.coeff(l - d) if l > d else Fraction(0),
            kind=self.kind,
            length=None if self.length is None else self.length + d,
            known_order=None if self.known_order is None else self.known_order + d,
        )

    def mul(self, other: "PowerSeries") -> "PowerSeries":
        """Cauchy product (starts at x^-2)."""
        length = None
        if self.length is not None and other.length is not None:
            length = self.length + other.length

        def fn(l: int) -> Fraction:
            return sum(
                (self.coeff(i) * other.coeff(l - i) for i in range(1, l)),
                Fraction(0),
            )

        return PowerSeries(fn, kind=_join_kind(self, other), length=length)

    def derivative(self) -> "PowerSeries":
        """Termwise d/dx: c_l x^-l maps to -l c_l x^-(l+1)."""
        return PowerSeries(
            lambda l: -(l - 1) * self.coeff(l - 1) if l >= 2 else Fraction(0),
            kind=self.kind,
            length=None if self.length is None else self.length + 1,
        )

    def diff_combo(self, beta: Fraction, rate: Fraction) -> "PowerSeries":
        """(beta/x + rate) * y + y': content series of (x^beta e^(rate x) y)'."""
        beta = Fraction(beta)
        rate = Fraction(rate)

        def fn(l: int) -> Fraction:
            out = rate * self.coeff(l)
            if l >= 2:
                out += (beta - (l - 1)) * self.coeff(l - 1)
            return out

        length = None if self.length is None else self.length + 1
        return PowerSeries(fn, kind=_join_kind(self), length=length)

    def shift_argument(self, s: Fraction) -> "PowerSeries":
        """Re-expansion of y(x + s) in powers of 1/x."""
        s = Fraction(s)
        if s == 0:
            return self

        def fn(j: int) -> Fraction:
            # x^(-l) re-expands with binom(-l, i) s^i x^(-l-i)
            total = Fraction(0)
            for l in range(1, j + 1):
                c = self.coeff(l)
                if c == 0:
                    continue
                total += c * _binom_general(Fraction(-l), j - l) * s ** (j - l)
            return total

        return PowerSeries(fn, kind=_join_kind(self), length=None if self.length is None else None)

    @classmethod
    def from_recurrence(cls, first: Fraction, step: Callable[[int, Fraction], Fraction]) -> "PowerSeries":
        """w_1 = first, w_l = step(l, w_(l-1)) for l >= 2, memoized."""
        cache = [Fraction(first)]

        def fn(l: int) -> Fraction:
            while len(cache) < l:
                j = len(cache) + 1
                cache.append(Fraction(step(j, cache[-1])))
            return cache[l - 1]

        return cls(fn, kind=KIND_RECURRENCE)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs(4))
        return f"PowerSeries[{head}, ...]"


def _join_kind(*series: "PowerSeries") -> str:
    if all(s.kind == KIND_FINITE for s in series):
        return KIND_CLOSED  # derived, no longer a plain list
    return KIND_RECURRENCE if any(s.kind == KIND_RECURRENCE for s in series) else KIND_CLOSED


def _binom_general(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= (a - i) / (i + 1)
    return out
