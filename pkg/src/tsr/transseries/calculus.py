"""Calculus on T1: algebra, termwise differentiation, antidifferentiation.

Antidifferentiation solves, per exponential group x^b e^(mu x) y(x), the ODE
w' + (mu + b/x) w = y in power series.  Writing y = sum(c_l x^-l) and
w = sum(w_l x^-l), matching the coefficient of x^-l gives

    mu*w_l + (b - (l-1)) * w_(l-1) = c_l

so for decaying groups (mu = -a, a = k.lambda > 0, b = k.beta):

    w_1 = -c_1/a,   w_l = ((b - (l-1)) * w_(l-1) - c_l) / a

and for growing groups (mu = lambda_j > 0, b = beta_j):

    w_1 = c_1/mu,   w_l = (c_l + (l - 1 - b) * w_(l-1)) / mu.

The recurrence printed in the source material carries an inconsistent sign
and index; the derivation above is fixed by the normative round trip
ts_diff(ts_antidiff(T)) = T, which the tests enforce to every demanded order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from ..errors import UndecidableSupport
from .grid import (
    GridMinus,
    GridPlus,
    Group,
    LogPart,
    PlusTerm,
    TransseriesT1,
    assemble,
    eq_to_order,
    groups_of,
    semantic_terms,
)
from .series import PowerSeries

POS, NEG, ZERO = 1, -1, 0

#: transmonomial scan bound for sign decisions
SIGN_SCAN_ORDER = 64


def _seed_of(*tss: TransseriesT1) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Common refinement of the operands' minus-grid generators.

    A generator expressible over the ones already kept (integer multi-index
    with compatible offset) is dropped, so commensurate rates like 1 and 2
    share one generator instead of tripping the nonresonance validator.
    """
    from .grid import _express_rate

    lam: list[Fraction] = []
    beta: list[Fraction] = []
    for ts in tss:
        for l, b in zip(ts.minus.lam, ts.minus.beta):
            if l in lam:
                i = lam.index(l)
                d = beta[i] - b
                if d.denominator == 1:
                    beta[i] = max(beta[i], b)
                    continue
            if _express_rate(l, b, lam, beta) is not None:
                continue
            if len(lam) == 1 and (l / lam[0]).denominator == 1:
                # commensurate with the single kept generator: raise its offset
                k = int(l / lam[0])
                beta[0] = max(beta[0], -(-b // k))
                continue
            lam.append(l)
            beta.append(b)
    return tuple(lam), tuple(beta)


def ts_add(a: TransseriesT1, b: TransseriesT1) -> TransseriesT1:
    return assemble(groups_of(a) + groups_of(b), a.log + b.log, seed=_seed_of(a, b))


def ts_scale(c, a: TransseriesT1) -> TransseriesT1:
    c = Fraction(c)
    if c == 0:
        return TransseriesT1.zero()
    groups = [Group(g.mu, g.offset, g.series.scale(c)) for g in groups_of(a)]
    return assemble(groups, a.log.scale(c), seed=_seed_of(a))


def ts_sub(a: TransseriesT1, b: TransseriesT1) -> TransseriesT1:
    return ts_add(a, ts_scale(-1, b))


def ts_mul_minus(a: GridMinus | TransseriesT1, b: GridMinus | TransseriesT1) -> TransseriesT1:
    """Product on the (unital) decaying algebra: multi-index Cauchy product.

    Constants are admitted as the algebra unit's multiples (the unit itself
    is x * x^-1 in the shifted normalization, which the assembler folds back
    into a plain constant).
    """
    ta = a if isinstance(a, TransseriesT1) else TransseriesT1(minus=a)
    tb = b if isinstance(b, TransseriesT1) else TransseriesT1(minus=b)
    ca = _constant_part(ta)
    cb = _constant_part(tb)
    out: list[Group] = []
    for ga in groups_of(ta):
        for gb in groups_of(tb):
            out.append(Group(ga.mu + gb.mu, ga.offset + gb.offset, ga.series.mul(gb.series)))
    if cb:
        out += [Group(g.mu, g.offset, g.series.scale(cb)) for g in groups_of(ta)]
    if ca:
        out += [Group(g.mu, g.offset, g.series.scale(ca)) for g in groups_of(tb)]
    const = ca * cb
    return assemble(out, LogPart(Q=(const,) if const else ()), seed=_seed_of(ta, tb))


def _constant_part(ts: TransseriesT1) -> Fraction:
    lp = ts.log
    if lp.P or lp.R or len(lp.Q) > 1 or ts.plus.terms:
        raise ValueError("ts_mul_minus operates on the minus algebra (plus constants) only")
    return lp.q_coeff(0)


def ts_diff(a: TransseriesT1) -> TransseriesT1:
    groups = [Group(g.mu, g.offset, g.series.diff_combo(g.offset, g.mu)) for g in groups_of(a)]
    lp = a.log
    # (P log x + Q)' = P' log x + P/x + Q'
    P = tuple((i + 1) * lp.p_coeff(i + 1) for i in range(max(len(lp.P) - 1, 0)))
    Q = list((i + 1) * lp.q_coeff(i + 1) for i in range(max(len(lp.Q) - 1, 0)))
    for i, c in enumerate(lp.P):
        if i >= 1:
            while len(Q) <= i - 1:
                Q.append(Fraction(0))
            Q[i - 1] += c
        elif c != 0:
            groups.append(Group(Fraction(0), Fraction(0), PowerSeries.from_coeffs([c])))
    for l in range(1, len(lp.R) + 1):  # R only appears in decomposed views
        groups.append(Group(Fraction(0), Fraction(0), PowerSeries.monomial(l + 1, -l * lp.r_coeff(l))))
    return assemble(groups, LogPart(P, tuple(Q), ()), seed=_seed_of(a))


def _antidiff_group(g: Group) -> Group:
    mu, b, y = g.mu, g.offset, g.series
    if mu < 0:
        a = -mu

        def step(l: int, prev: Fraction) -> Fraction:
            return ((b - (l - 1)) * prev - y.coeff(l)) / a

        w = PowerSeries.from_recurrence(-y.coeff(1) / a, step)
    else:

        def step(l: int, prev: Fraction) -> Fraction:
            return (y.coeff(l) + (l - 1 - b) * prev) / mu

        w = PowerSeries.from_recurrence(y.coeff(1) / mu, step)
    return Group(mu, b, w)


def ts_antidiff(a: TransseriesT1) -> TransseriesT1:
    """A_T: the antiderivative with zero constant term."""
    groups: list[Group] = []
    P: list[Fraction] = []
    Q: list[Fraction] = []

    def add_P(i: int, c: Fraction):
        while len(P) <= i:
            P.append(Fraction(0))
        P[i] += c

    def add_Q(i: int, c: Fraction):
        while len(Q) <= i:
            Q.append(Fraction(0))
        Q[i] += c

    for g in groups_of(a):
        if g.mu != 0:
            groups.append(_antidiff_group(g))
            continue
        # pure inverse powers: c_1/x integrates to log x, the tail termwise
        y = g.series
        if g.offset != 0:
            raise ValueError("canonical form should keep k=0 content at offset 0")
        c1 = y.coeff(1)
        if c1 != 0:
            add_P(0, c1)
        tail = PowerSeries(
            lambda l, y=y: -y.coeff(l + 1) / l,
            kind=y.kind,
            length=None if y.length is None else max(y.length - 1, 0),
        )
        groups.append(Group(Fraction(0), Fraction(0), tail))
    lp = a.log
    for i, c in enumerate(lp.P):
        # x^i log x -> x^(i+1)/(i+1) log x - x^(i+1)/(i+1)^2
        add_P(i + 1, c / (i + 1))
        add_Q(i + 1, -c / Fraction((i + 1) ** 2))
    for i, c in enumerate(lp.Q):
        add_Q(i + 1, c / (i + 1))
    for l in range(1, len(lp.R) + 1):
        c = lp.r_coeff(l)
        if l == 1:
            add_P(0, c)
        else:
            groups.append(Group(Fraction(0), Fraction(0), PowerSeries.monomial(l - 1, -c / (l - 1))))
    return assemble(groups, LogPart(tuple(P), tuple(Q), ()), seed=_seed_of(a))


def ts_decompose(a: TransseriesT1, m: int) -> tuple[GridMinus, LogPart, GridPlus]:
    """The unique m-decomposition T(-,m) + T(m,l) + T(+)."""
    if m < 0:
        raise ValueError("m must be a natural number")
    g = a.minus
    k0 = (0,) * g.n
    y0 = g.series_at(k0)
    R = tuple(y0.coeff(l) + a.log.r_coeff(l) for l in range(1, m + 1))
    tail = PowerSeries.from_fn(
        lambda l, y0=y0, m=m: y0.coeff(l) if l > m else Fraction(0), kind=y0.kind
    )
    if y0.is_finite():
        tail = PowerSeries.from_coeffs([Fraction(0)] * m + [y0.coeff(l) for l in range(m + 1, (y0.length or 0) + 1)])
    series = dict(g.series)
    series[k0] = tail
    minus = GridMinus(lam=g.lam, beta=g.beta, series=series, support_iter=g.support_iter)
    return minus, LogPart(a.log.P, a.log.Q, R), a.plus


_MONO_KEY = tuple[Fraction, Fraction, int]


def _dominant_key(a: TransseriesT1, scan: int = SIGN_SCAN_ORDER) -> Optional[tuple[_MONO_KEY, Fraction]]:
    """(key, coefficient) of the >>-largest nonzero transmonomial, or None."""
    best: Optional[tuple[_MONO_KEY, Fraction]] = None

    def offer(key: _MONO_KEY, c: Fraction):
        nonlocal best
        if c != 0 and (best is None or key > best[0]):
            best = (key, c)

    for t in a.plus.terms:
        l0 = t.series.first_nonzero(scan)
        if l0 is not None:
            offer((t.lam, t.beta - l0, 0), t.series.coeff(l0))
    for i in range(len(a.log.P) - 1, -1, -1):
        offer((Fraction(0), Fraction(i), 1), a.log.p_coeff(i))
    for i in range(len(a.log.Q) - 1, -1, -1):
        offer((Fraction(0), Fraction(i), 0), a.log.q_coeff(i))
    for l in range(1, len(a.log.R) + 1):
        offer((Fraction(0), Fraction(-l), 0), a.log.r_coeff(l))
    g = a.minus
    for k in g.support():
        s = g.series_at(k)
        try:
            l0 = s.first_nonzero(scan)
        except UndecidableSupport:
            if best is None or best[0] < (-g.rate(k), g.offset(k), 0):
                raise
            l0 = None
        if l0 is not None:
            offer((-g.rate(k), g.offset(k) - l0, 0), s.coeff(l0))
            if g.support_iter is None:
                # finite supports are sorted; later k cannot beat this one
                # unless their rate ties, which the sort already orders.
                pass
    if g.support_iter is not None and best is None:
        raise UndecidableSupport("lazy minus support produced no nonzero term in the window")
    return best


def ts_sign(a: TransseriesT1, scan: int = SIGN_SCAN_ORDER) -> int:
    """Sign of the coefficient of the >>-largest transmonomial."""
    best = _dominant_key(a, scan)
    if best is None:
        return ZERO
    return POS if best[1] > 0 else NEG


def ts_dominates(a: TransseriesT1, b: TransseriesT1, scan: int = SIGN_SCAN_ORDER) -> bool:
    """a >> b: the dominant transmonomial of a strictly exceeds that of b."""
    ka = _dominant_key(a, scan)
    kb = _dominant_key(b, scan)
    if ka is None:
        return False
    if kb is None:
        return True
    return ka[0] > kb[0]


# -- constructors used by the parser, catalog, and tests ----------------------


def from_power_series(ps: PowerSeries) -> TransseriesT1:
    return assemble([Group(Fraction(0), Fraction(0), ps)], LogPart())


def from_plus_term(lam, beta, ps: PowerSeries) -> TransseriesT1:
    return TransseriesT1(plus=GridPlus([PlusTerm(Fraction(lam), Fraction(beta), ps)]))


def from_minus_term(rate, offset, ps: PowerSeries) -> TransseriesT1:
    return assemble([Group(-Fraction(rate), Fraction(offset), ps)], LogPart())


def from_log_part(P=(), Q=(), R=()) -> TransseriesT1:
    return assemble([], LogPart(tuple(P), tuple(Q), tuple(R)))


__all__ = [
    "POS",
    "NEG",
    "ZERO",
    "ts_add",
    "ts_scale",
    "ts_sub",
    "ts_mul_minus",
    "ts_diff",
    "ts_antidiff",
    "ts_decompose",
    "ts_sign",
    "ts_dominates",
    "eq_to_order",
    "semantic_terms",
    "from_power_series",
    "from_plus_term",
    "from_minus_term",
    "from_log_part",
]
