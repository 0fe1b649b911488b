"""Hereditary normal forms: finite sums of w^(exponent) * coefficient.

A :class:`SurrealNF` is a finite sequence of (exponent, coefficient) terms
with exponents again normal forms, strictly decreasing, and nonzero rational
coefficients.  Arithmetic is polynomial-style with w^x * w^y = w^(x+y);
comparison is lexicographic on the term sequence, highest exponent first.
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

LT, EQ, GT = -1, 0, 1


def _rat(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@functools.total_ordering
class SurrealNF:
    """Normal form sum(w^y_i * r_i) with strictly decreasing exponents y_i."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple["SurrealNF", Fraction]] = (), *, _normalized=False):
        terms = tuple(terms)
        if not _normalized:
            terms = _normalize(terms)
        object.__setattr__(self, "terms", terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "SurrealNF":
        return _ZERO

    @classmethod
    def from_rational(cls, r: RationalLike) -> "SurrealNF":
        r = _rat(r)
        if r == 0:
            return _ZERO
        return cls(((_ZERO, r),), _normalized=True)

    @classmethod
    def monomial(cls, exponent: "SurrealNF", coefficient: RationalLike = 1) -> "SurrealNF":
        c = _rat(coefficient)
        if c == 0:
            return _ZERO
        return cls(((exponent, c),), _normalized=True)

    # -- structure ---------------------------------------------------------

    def __setattr__(self, *a):
        raise AttributeError("SurrealNF is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        """True when the value is 0 or a single w^0 term."""
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_rational(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational")
        return self.terms[0][1]

    def depth(self) -> int:
        """Hereditary nesting level of the exponent tree."""
        if not self.terms:
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    def coefficient(self, exponent: "SurrealNF") -> Fraction:
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, SurrealNF) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __lt__(self, other: "SurrealNF") -> bool:
        return nf_cmp(self, other) == LT

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "SurrealNF":
        other = _coerce(other)
        return nf_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "SurrealNF":
        return SurrealNF(tuple((e, -c) for e, c in self.terms), _normalized=True)

    def __sub__(self, other) -> "SurrealNF":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SurrealNF":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "SurrealNF":
        return nf_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SurrealNF":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only natural powers")
        out = one()
        base = self
        while n:
            if n & 1:
                out = nf_mul(out, base)
            base = nf_mul(base, base) if n > 1 else base
            n >>= 1
        return out

    def __str__(self) -> str:
        from .render import render_nf

        return render_nf(self)

    def __repr__(self) -> str:
        return f"SurrealNF({str(self)})"

    # -- json ----------------------------------------------------------------

    def to_json_obj(self):
        def enc_exp(e: "SurrealNF"):
            if e.is_rational():
                q = e.as_rational()
                return int(q) if q.denominator == 1 else e.to_json_obj()
            return e.to_json_obj()

        return {"terms": [{"exp": enc_exp(e), "coef": str(c)} for e, c in self.terms]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "SurrealNF":
        if isinstance(obj, (int, float)):
            return cls.from_rational(Fraction(obj).limit_denominator() if isinstance(obj, float) else obj)
        terms = []
        for t in obj["terms"]:
            e = t["exp"]
            exp = cls.from_rational(e) if isinstance(e, int) else cls.from_json_obj(e)
            terms.append((exp, Fraction(t["coef"])))
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "SurrealNF":
        return cls.from_json_obj(json.loads(text))


_ZERO = SurrealNF((), _normalized=True)


def _coerce(x) -> SurrealNF:
    if isinstance(x, SurrealNF):
        return x
    if isinstance(x, (int, Fraction)):
        return SurrealNF.from_rational(x)
    return NotImplemented


def _normalize(terms: Sequence[tuple[SurrealNF, Fraction]]) -> tuple:
    """Collect equal exponents, drop zeros, sort strictly decreasing."""
    bucket: list[list] = []
    for e, c in terms:
        c = _rat(c)
        for pair in bucket:
            if pair[0] == e:
                pair[1] += c
                break
        else:
            bucket.append([e, c])
    bucket = [(e, c) for e, c in bucket if c != 0]
    bucket.sort(key=functools.cmp_to_key(lambda a, b: nf_cmp(a[0], b[0])), reverse=True)
    return tuple((e, c) for e, c in bucket)


def one() -> SurrealNF:
    return SurrealNF.from_rational(1)


def omega() -> SurrealNF:
    return SurrealNF.monomial(one())


def omega_map(y: SurrealNF) -> SurrealNF:
    """The w-map: y maps to the leader w^y (a single-term normal form)."""
    return SurrealNF.monomial(y)


def nf_cmp(a: SurrealNF, b: SurrealNF) -> int:
    """Lexicographic comparison: decide at the highest differing exponent."""
    ia, ib = 0, 0
    ta, tb = a.terms, b.terms
    while ia < len(ta) and ib < len(tb):
        ea, ca = ta[ia]
        eb, cb = tb[ib]
        c = nf_cmp(ea, eb)
        if c == GT:
            # a has a term at a higher exponent; its sign decides.
            return GT if ca > 0 else LT
        if c == LT:
            return GT if cb < 0 else LT
        if ca != cb:
            return GT if ca > cb else LT
        ia += 1
        ib += 1
    if ia < len(ta):
        return GT if ta[ia][1] > 0 else LT
    if ib < len(tb):
        return GT if tb[ib][1] < 0 else LT
    return EQ


def nf_add(a: SurrealNF, b: SurrealNF) -> SurrealNF:
    """Merge on exponents with like-term collection."""
    out = []
    ia, ib = 0, 0
    ta, tb = a.terms, b.terms
    while ia < len(ta) and ib < len(tb):
        ea, ca = ta[ia]
        eb, cb = tb[ib]
        c = nf_cmp(ea, eb)
        if c == GT:
            out.append((ea, ca))
            ia += 1
        elif c == LT:
            out.append((eb, cb))
            ib += 1
        else:
            s = ca + cb
            if s != 0:
                out.append((ea, s))
            ia += 1
            ib += 1
    out.extend(ta[ia:])
    out.extend(tb[ib:])
    return SurrealNF(tuple(out), _normalized=True)


def nf_neg(a: SurrealNF) -> SurrealNF:
    return -a


def nf_mul(a: SurrealNF, b: SurrealNF) -> SurrealNF:
    """Cauchy-style product with exponent addition."""
    terms = []
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            terms.append((nf_add(ea, eb), ca * cb))
    return SurrealNF(terms)


def nf_inv_of_monomial(a: SurrealNF) -> SurrealNF:
    """(w^y * r)^(-1) = w^(-y) * (1/r); requires a single-term input."""
    if len(a.terms) != 1:
        raise ValueError("inverse is only defined for monomials")
    e, c = a.terms[0]
    return SurrealNF.monomial(-e, Fraction(1) / c)


def decompose(a: SurrealNF) -> tuple[SurrealNF, Fraction, SurrealNF]:
    """Split into (purely infinite, real, infinitesimal) parts by exponent sign."""
    infinite, real, small = [], Fraction(0), []
    zero = _ZERO
    for e, c in a.terms:
        c0 = nf_cmp(e, zero)
        if c0 == GT:
            infinite.append((e, c))
        elif c0 == EQ:
            real = c
        else:
            small.append((e, c))
    return (
        SurrealNF(tuple(infinite), _normalized=True),
        real,
        SurrealNF(tuple(small), _normalized=True),
    )


def is_purely_infinite(a: SurrealNF) -> bool:
    return all(nf_cmp(e, _ZERO) == GT for e, _ in a.terms)


def is_infinitesimal(a: SurrealNF) -> bool:
    return all(nf_cmp(e, _ZERO) == LT for e, _ in a.terms)


def nf_from_sign_expansion(x) -> SurrealNF:
    """Embed a finite-birthday surreal (a dyadic) as a normal form."""
    from .signs import sign_value

    return SurrealNF.from_rational(sign_value(x))


def nf_to_sign_expansion(a: SurrealNF):
    """Inverse embedding; requires a dyadic-rational value."""
    from .signs import sign_expansion_of

    return sign_expansion_of(a.as_rational())
