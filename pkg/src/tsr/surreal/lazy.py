"""Lazy normal forms and Conway Limits of absolutely convergent series.

A :class:`LazyNF` is a stream of (exponent, coefficient) terms in strictly
decreasing exponent order, memoized as demanded.  :func:`lim` turns a
sequence of normal forms into its Limit, certified by a caller-supplied
stabilization schedule: an enumeration of candidate exponents (descending)
together with the index from which each exponent's coefficient has
stabilized.  Stability is additionally spot-checked a few indices past the
schedule; an observed change raises :class:`NotStabilizedError`.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from ..errors import NotStabilizedError
from .normal_form import LT, SurrealNF, nf_cmp

Term = tuple[SurrealNF, Fraction]


class LazyNF:
    """A descending, possibly infinite stream of normal-form terms.

    Generators may be re-run; memoization makes repeated access cheap and is
    recomputation-safe (terms are immutable values).
    """

    def __init__(self, gen_fn: Callable[[], Iterator[Term]]):
        self._gen_fn = gen_fn
        self._cache: list[Term] = []
        self._iter: Iterator[Term] | None = None
        self._done = False
        self._lock = threading.RLock()  # generators are not re-entrant

    @classmethod
    def from_nf(cls, a: SurrealNF) -> "LazyNF":
        return cls(lambda: iter(a.terms))

    @classmethod
    def from_terms(cls, terms: Iterable[Term]) -> "LazyNF":
        terms = list(terms)
        return cls(lambda: iter(terms))

    def _ensure(self, n: int) -> None:
        if self._done or len(self._cache) >= n:
            return
        with self._lock:
            if self._iter is None:
                self._iter = self._gen_fn()
            while not self._done and len(self._cache) < n:
                try:
                    e, c = next(self._iter)
                except StopIteration:
                    self._done = True
                    return
                if c == 0:
                    continue
                if self._cache and nf_cmp(e, self._cache[-1][0]) != LT:
                    raise ValueError(f"exponents not strictly decreasing at term {len(self._cache)}")
                self._cache.append((e, Fraction(c)))

    def term(self, i: int) -> Term | None:
        self._ensure(i + 1)
        return self._cache[i] if i < len(self._cache) else None

    def terms(self, n: int) -> list[Term]:
        self._ensure(n)
        return list(self._cache[:n])

    def truncate(self, n: int) -> SurrealNF:
        """First n terms as an exact normal form."""
        return SurrealNF(tuple(self.terms(n)), _normalized=True)

    def is_finite_known(self) -> bool:
        return self._done

    def __iter__(self) -> Iterator[Term]:
        i = 0
        while True:
            t = self.term(i)
            if t is None:
                return
            yield t
            i += 1

    def scale(self, c: Fraction) -> "LazyNF":
        c = Fraction(c)
        if c == 0:
            return LazyNF.from_terms([])
        return LazyNF(lambda: ((e, c * r) for e, r in self))

    def shift(self, offset: SurrealNF) -> "LazyNF":
        """Multiply by the monomial w^offset."""
        return LazyNF(lambda: ((e + offset, r) for e, r in self))

    def __add__(self, other: "LazyNF") -> "LazyNF":
        def gen():
            ia, ib = 0, 0
            while True:
                ta, tb = self.term(ia), other.term(ib)
                if ta is None and tb is None:
                    return
                if tb is None or (ta is not None and nf_cmp(ta[0], tb[0]) == 1):
                    yield ta
                    ia += 1
                elif ta is None or nf_cmp(ta[0], tb[0]) == LT:
                    yield tb
                    ib += 1
                else:
                    s = ta[1] + tb[1]
                    if s != 0:
                        yield (ta[0], s)
                    ia += 1
                    ib += 1

        return LazyNF(gen)

    def __neg__(self) -> "LazyNF":
        return self.scale(Fraction(-1))

    def render(self, n_terms: int) -> str:
        from .render import render_nf

        head = self.truncate(n_terms)
        text = render_nf(head)
        if self.term(n_terms) is not None:
            text += " + ..."
        return text


Schedule = Iterable[tuple[SurrealNF, int]]


def schedule_from_nf(a: SurrealNF, index: int = 0) -> list[tuple[SurrealNF, int]]:
    """Schedule for a sequence already equal to ``a`` from ``index`` on."""
    return [(e, index) for e, _ in a.terms]


def lim(seq: Callable[[int], SurrealNF], schedule: Schedule, *, verify_extra: int = 2) -> LazyNF:
    """Limit of an absolutely convergent sequence of normal forms.

    ``seq(n)`` is the n-th element; ``schedule`` yields (exponent, m) pairs,
    exponents strictly decreasing, such that the coefficient of w^exponent in
    seq(n) equals its final value for every n >= m.
    """

    def gen():
        for exponent, m in schedule:
            c = seq(m).coefficient(exponent)
            for extra in range(1, verify_extra + 1):
                if seq(m + extra).coefficient(exponent) != c:
                    raise NotStabilizedError(
                        f"coefficient of w^({exponent}) changed after scheduled index {m}"
                    )
            if c != 0:
                yield (exponent, c)

    return LazyNF(gen)
