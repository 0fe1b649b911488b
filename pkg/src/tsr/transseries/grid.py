"""Height-one, depth-one transseries: grids, log part, and the T1 sum.

A transseries here is a triple

* ``minus``  -- sum(k) x^(beta.k) e^(-k.lambda x) y_k(x), lambda_i > 0
* ``log``    -- P(x) log x + Q(x) + R(1/x) with R constant-free
* ``plus``   -- sum(j) x^(beta_j) e^(lambda_j x) y_j(x), lambda_j > 0 distinct

with all series y O(1/x).  Internally the representation is normalized to
m = 0: the R component is empty and every pure inverse power lives in the
k = 0 series of the minus grid; ``decompose_m`` recuts the triple for any m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from ..errors import GridMergeError, ResonanceError
from .series import PowerSeries

MultiIndex = tuple[int, ...]

#: default cap on merged grid generators
MAX_GENERATORS = 8
#: window used for bounded nonresonance validation
RESONANCE_WINDOW = 16


def _zero_index(n: int) -> MultiIndex:
    return (0,) * n


@dataclass
class GridMinus:
    """The decaying grid: generators lam/beta and per-multi-index series."""

    lam: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    series: dict[MultiIndex, PowerSeries] = field(default_factory=dict)
    support_iter: Optional[Iterable[MultiIndex]] = None  # lazy supports

    def __post_init__(self):
        self.lam = tuple(Fraction(v) for v in self.lam)
        self.beta = tuple(Fraction(v) for v in self.beta)
        if any(v <= 0 for v in self.lam):
            raise ValueError("minus-grid rates must be positive")
        validate_nonresonance(self.lam)
        n = len(self.lam)
        if len(self.beta) != n:
            raise ValueError("lambda and beta must have equal length")
        self.series = {tuple(k): s for k, s in self.series.items()}
        for k in self.series:
            if len(k) != n or any(i < 0 for i in k):
                raise ValueError(f"bad multi-index {k}")

    @property
    def n(self) -> int:
        return len(self.lam)

    @classmethod
    def empty(cls, n: int = 0) -> "GridMinus":
        return cls(lam=(Fraction(1),) * n if n else (), beta=(Fraction(0),) * n if n else ())

    def rate(self, k: MultiIndex) -> Fraction:
        return sum((Fraction(ki) * li for ki, li in zip(k, self.lam)), Fraction(0))

    def offset(self, k: MultiIndex) -> Fraction:
        return sum((Fraction(ki) * bi for ki, bi in zip(k, self.beta)), Fraction(0))

    def series_at(self, k: MultiIndex) -> PowerSeries:
        return self.series.get(tuple(k), PowerSeries.zero())

    def support(self, *, rate_cutoff: Optional[Fraction] = None, max_points: int = 4096) -> Iterator[MultiIndex]:
        """Support multi-indices ordered by rate ascending (ties: offset desc, lex)."""
        points: Iterable[MultiIndex]
        if self.support_iter is not None:
            points = itertools.islice(self.support_iter, max_points)
        else:
            points = self.series.keys()
        points = sorted(points, key=lambda k: (self.rate(k), -self.offset(k), k))
        seen_rates = {}
        for k in points:
            r = self.rate(k)
            if rate_cutoff is not None and r > rate_cutoff:
                return
            if r in seen_rates and seen_rates[r] != self.offset(k) % 1:
                raise ResonanceError(f"support points collide at rate {r}")
            seen_rates.setdefault(r, self.offset(k) % 1)
            yield k

    def is_zero(self, order: int = 12) -> bool:
        return all(s.is_zero_upto(order) for s in self.series.values()) and self.support_iter is None


@dataclass
class LogPart:
    """P(x) log x + Q(x) + R(1/x); R stored as coefficients of x^-1, x^-2, ..."""

    P: tuple[Fraction, ...] = ()
    Q: tuple[Fraction, ...] = ()
    R: tuple[Fraction, ...] = ()

    def __post_init__(self):
        self.P = _trim(tuple(Fraction(c) for c in self.P))
        self.Q = _trim(tuple(Fraction(c) for c in self.Q))
        self.R = _trim(tuple(Fraction(c) for c in self.R))

    def p_coeff(self, i: int) -> Fraction:
        return self.P[i] if i < len(self.P) else Fraction(0)

    def q_coeff(self, i: int) -> Fraction:
        return self.Q[i] if i < len(self.Q) else Fraction(0)

    def r_coeff(self, l: int) -> Fraction:
        """Coefficient of x^-l, l >= 1."""
        return self.R[l - 1] if 1 <= l <= len(self.R) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.P and not self.Q and not self.R

    def __add__(self, other: "LogPart") -> "LogPart":
        return LogPart(_poly_add(self.P, other.P), _poly_add(self.Q, other.Q), _poly_add(self.R, other.R))

    def scale(self, c: Fraction) -> "LogPart":
        c = Fraction(c)
        return LogPart(
            tuple(c * v for v in self.P), tuple(c * v for v in self.Q), tuple(c * v for v in self.R)
        )


def _trim(p: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_add(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0)) for i in range(n)
    )


@dataclass
class PlusTerm:
    lam: Fraction
    beta: Fraction
    series: PowerSeries

    def __post_init__(self):
        self.lam = Fraction(self.lam)
        self.beta = Fraction(self.beta)
        if self.lam <= 0:
            raise ValueError("plus-part rates must be positive")


@dataclass
class GridPlus:
    terms: list[PlusTerm] = field(default_factory=list)

    def __post_init__(self):
        # canonical order: lambda strictly decreasing
        merged: list[PlusTerm] = []
        for t in sorted(self.terms, key=lambda t: (-t.lam, -t.beta)):
            if merged and merged[-1].lam == t.lam:
                merged[-1] = _merge_plus(merged[-1], t)
            else:
                merged.append(t)
        self.terms = merged

    def is_zero(self, order: int = 12) -> bool:
        return all(t.series.is_zero_upto(order) for t in self.terms)


def _merge_plus(a: PlusTerm, b: PlusTerm) -> PlusTerm:
    d = a.beta - b.beta
    if d.denominator != 1:
        raise GridMergeError(
            f"plus terms at rate {a.lam} have offsets {a.beta}, {b.beta} differing by a non-integer"
        )
    return PlusTerm(a.lam, a.beta, a.series + b.series.shift_down(int(d)))


@dataclass
class TransseriesT1:
    minus: GridMinus = field(default_factory=lambda: GridMinus.empty())
    log: LogPart = field(default_factory=LogPart)
    plus: GridPlus = field(default_factory=GridPlus)

    @classmethod
    def zero(cls) -> "TransseriesT1":
        return cls()

    def is_zero(self, order: int = 12) -> bool:
        return self.minus.is_zero(order) and self.log.is_zero() and self.plus.is_zero(order)


def validate_nonresonance(lam: tuple[Fraction, ...], window: int = RESONANCE_WINDOW) -> None:
    """Bounded check of the nonresonance condition on the rate generators.

    Rejects integer relations d . lam = 0 with |d_i| <= window; this is exact
    for every support the library enumerates (all bounded by the window).
    """
    n = len(lam)
    if n <= 1:
        return
    # pairwise check is enough for relations of the form a*lam_i = b*lam_j
    for i in range(n):
        for j in range(i + 1, n):
            q = lam[i] / lam[j]
            if q.numerator <= window and q.denominator <= window:
                raise ResonanceError(
                    f"rates {lam[i]} and {lam[j]} are commensurate within the window: "
                    f"{q.denominator}*{lam[i]} = {q.numerator}*{lam[j]}"
                )


# -- raw-group assembly -------------------------------------------------------


@dataclass
class Group:
    """One exponential group x^offset * e^(mu x) * series, series O(1/x)."""

    mu: Fraction  # signed rate; 0 means no exponential
    offset: Fraction
    series: PowerSeries

    def __post_init__(self):
        self.mu = Fraction(self.mu)
        self.offset = Fraction(self.offset)


def groups_of(ts: TransseriesT1, *, kmax: Optional[int] = None) -> list[Group]:
    """Flatten to exponential groups (log part excluded)."""
    out: list[Group] = []
    g = ts.minus
    for k in g.support():
        if kmax is not None and sum(k) > kmax:
            continue
        out.append(Group(-g.rate(k), g.offset(k), g.series_at(k)))
    for t in ts.plus.terms:
        out.append(Group(t.lam, t.beta, t.series))
    return out


def assemble(
    groups: Iterable[Group],
    log: LogPart = None,
    *,
    max_generators: int = MAX_GENERATORS,
    seed: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] = ((), ()),
) -> TransseriesT1:
    """Build a normalized TransseriesT1 from raw groups plus a log part.

    ``seed`` pre-populates the minus-grid generator basis so operations on an
    existing grid stay on that grid instead of re-deriving one.
    """
    log = log if log is not None else LogPart()
    plus_terms: list[PlusTerm] = []
    minus_raw: list[Group] = []
    q_extra: list[tuple[int, Fraction]] = []
    r_extra: dict[int, Fraction] = {}
    zero_series = []

    for grp in groups:
        if grp.mu > 0:
            plus_terms.append(PlusTerm(grp.mu, grp.offset, grp.series))
        elif grp.mu < 0:
            minus_raw.append(grp)
        else:
            # pure powers: split on the sign of the exponent
            if grp.offset.denominator != 1:
                raise GridMergeError(f"pure power content needs integer offsets, got x^{grp.offset}")
            a = int(grp.offset)
            s = grp.series
            if s.length is None and a >= 1:
                # peel the polynomial head, keep the O(1/x) tail
                for l in range(1, a + 1):
                    c = s.coeff(l)
                    if c != 0:
                        q_extra.append((a - l, c))
                zero_series.append((0, _shift_up(s, a)))
                continue
            top = s.length if s.length is not None else None
            scan = top if top is not None else 0
            for l in range(1, scan + 1):
                c = s.coeff(l)
                if c == 0:
                    continue
                power = a - l
                if power >= 0:
                    q_extra.append((power, c))
                else:
                    r_extra[-power] = r_extra.get(-power, Fraction(0)) + c
            if top is None:
                zero_series.append((a, s))

    # fold q/r residues into the log part and the k = 0 series
    Q = list(log.Q)
    for power, c in q_extra:
        while len(Q) <= power:
            Q.append(Fraction(0))
        Q[power] += c
    inverse: dict[int, Fraction] = dict(r_extra)
    for l in range(1, len(log.R) + 1):
        inverse[l] = inverse.get(l, Fraction(0)) + log.r_coeff(l)

    minus = _assemble_minus(minus_raw, max_generators=max_generators, seed=seed)
    k0 = _zero_index(minus.n)
    base = minus.series.get(k0, PowerSeries.zero())
    if inverse:
        base = base + PowerSeries.from_coeffs(
            [inverse.get(l, Fraction(0)) for l in range(1, max(inverse) + 1)]
        )
    for a, s in zero_series:  # infinite tails with offset <= 0
        base = base + s.shift_down(-a)
    if not base.is_finite() or base.length:
        minus.series[k0] = base

    return TransseriesT1(minus=minus, log=LogPart(log.P, tuple(Q), ()), plus=GridPlus(plus_terms))


def _shift_up(s: PowerSeries, d: int) -> PowerSeries:
    """Multiply by x^d, dropping the (assumed consumed) head: c_l <- c_(l+d)."""
    return PowerSeries(
        lambda l: s.coeff(l + d),
        kind=s.kind,
        length=None if s.length is None else max(s.length - d, 0),
    )


def _assemble_minus(
    raw: list[Group],
    *,
    max_generators: int,
    seed: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] = ((), ()),
) -> GridMinus:
    """Pick generators and multi-indices for decaying groups, greedily."""
    if not raw:
        return GridMinus.empty()
    # merge equal (rate, offset mod 1) groups first
    merged: list[Group] = []
    for grp in sorted(raw, key=lambda g: (-g.mu, -g.offset)):
        hit = next(
            (m for m in merged if m.mu == grp.mu and (m.offset - grp.offset).denominator == 1),
            None,
        )
        if hit is None:
            merged.append(Group(grp.mu, grp.offset, grp.series))
        else:
            d = hit.offset - grp.offset
            if d >= 0:
                hit.series = hit.series + grp.series.shift_down(int(d))
            else:
                hit.series, hit.offset = grp.series + hit.series.shift_down(int(-d)), grp.offset
    for a, b in itertools.combinations(merged, 2):
        if a.mu == b.mu:
            raise GridMergeError(
                f"groups at rate {-a.mu} have offsets {a.offset}, {b.offset} differing by a non-integer"
            )

    # fast path: no seed, integer offsets -> one gcd generator
    if not seed[0] and all(g.offset.denominator == 1 for g in merged):
        rates = [-g.mu for g in merged]
        g0 = rates[0]
        for r in rates[1:]:
            g0 = _frac_gcd(g0, r)
        ks = [r / g0 for r in rates]
        if all(k.denominator == 1 and k <= 64 for k in ks):
            b = max(Fraction(0), max(-(-grp.offset // int(k)) for grp, k in zip(merged, ks)))
            series: dict[MultiIndex, PowerSeries] = {}
            for grp, k in zip(merged, ks):
                d = int(k) * b - grp.offset
                series[(int(k),)] = grp.series.shift_down(int(d))
            return GridMinus(lam=(g0,), beta=(b,), series=series)

    lam: list[Fraction] = list(seed[0])
    beta: list[Fraction] = list(seed[1])
    slots: dict[MultiIndex, tuple[Fraction, PowerSeries]] = {}

    for grp in sorted(merged, key=lambda g: -g.mu):  # ascending rate
        rate = -grp.mu
        k = _express_rate(rate, grp.offset, lam, beta)
        if k is None:
            lam.append(rate)
            beta.append(grp.offset)
            if len(lam) > max_generators:
                raise GridMergeError(f"merged grid needs more than {max_generators} generators")
            slots = {key + (0,): val for key, val in slots.items()}
            k = (0,) * (len(lam) - 1) + (1,)
            slots[k] = (grp.offset, grp.series)
        else:
            if k in slots:
                off, s = slots[k]
                d = off - grp.offset
                if d >= 0:
                    slots[k] = (off, s + grp.series.shift_down(int(d)))
                else:
                    slots[k] = (grp.offset, grp.series + s.shift_down(int(-d)))
            else:
                slots[k] = (grp.offset, grp.series)

    n = len(lam)
    # prune generators no slot uses
    used = [any(k[i] for k in slots if i < len(k)) for i in range(n)]
    keep = [i for i in range(n) if used[i]]
    lam = [lam[i] for i in keep]
    beta = [beta[i] for i in keep]

    series: dict[MultiIndex, PowerSeries] = {}
    for k, (off, s) in slots.items():
        k = tuple(k) + (0,) * (n - len(k))
        k = tuple(k[i] for i in keep)
        want = sum((Fraction(ki) * bi for ki, bi in zip(k, beta)), Fraction(0))
        d = want - off
        if d.denominator != 1 or d < 0:
            raise GridMergeError(f"offset {off} not reachable from grid betas at {k}")
        series[k] = s.shift_down(int(d))
    try:
        return GridMinus(lam=tuple(lam), beta=tuple(beta), series=series)
    except ResonanceError as exc:
        raise GridMergeError(str(exc)) from exc


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    import math

    num = math.gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def _express_rate(
    rate: Fraction, offset: Fraction, lam: list[Fraction], beta: list[Fraction]
) -> Optional[MultiIndex]:
    """Find k >= 0 with k.lam = rate and offset reachable (integer slack >= 0)."""
    best: Optional[MultiIndex] = None
    n = len(lam)

    def search(i: int, remaining: Fraction, k: list[int]):
        nonlocal best
        if best is not None:
            return
        if i == n:
            if remaining == 0 and any(k):
                off = sum((Fraction(ki) * bi for ki, bi in zip(k, beta)), Fraction(0))
                d = off - offset
                if d.denominator == 1 and d >= 0:
                    best = tuple(k)
            return
        limit = int(remaining / lam[i]) if lam[i] <= remaining else 0
        for ki in range(limit + 1):
            k.append(ki)
            search(i + 1, remaining - ki * lam[i], k)
            k.pop()
            if best is not None:
                return

    search(0, rate, [])
    return best


# -- semantic views -----------------------------------------------------------


def semantic_terms(
    ts: TransseriesT1, order: int, *, rate_cutoff: Optional[Fraction] = None
) -> dict[tuple[Fraction, Fraction, int], Fraction]:
    """Exact coefficients of transmonomials x^a (log x)^s e^(mu x).

    Keys are (mu, a, s); powers reach down to x^(offset - order) per group.
    Representation-independent, so it is the equality oracle of the tests.
    """
    out: dict[tuple[Fraction, Fraction, int], Fraction] = {}

    def put(mu: Fraction, a: Fraction, s: int, c: Fraction):
        if c == 0:
            return
        key = (mu, a, s)
        out[key] = out.get(key, Fraction(0)) + c
        if out[key] == 0:
            del out[key]

    for grp in groups_of(ts):
        if rate_cutoff is not None and -grp.mu > rate_cutoff:
            continue
        for l in range(1, order + 1):
            put(grp.mu, grp.offset - l, 0, grp.series.coeff(l))
    lp = ts.log
    for i, c in enumerate(lp.P):
        put(Fraction(0), Fraction(i), 1, c)
    for i, c in enumerate(lp.Q):
        put(Fraction(0), Fraction(i), 0, c)
    for l in range(1, len(lp.R) + 1):
        put(Fraction(0), Fraction(-l), 0, lp.r_coeff(l))
    return out


def eq_to_order(a: TransseriesT1, b: TransseriesT1, order: int) -> bool:
    return semantic_terms(a, order) == semantic_terms(b, order)
