"""Expression grammar and text/JSON forms for T1 transseries.

Atoms: rationals, ``x``, ``x^(p/q)``, ``exp(r*x)``, ``log(x)``,
``series![c1, c2, ...]`` (explicit leading coefficients) and named oracles
``#ei``, ``#erfi``, ``#airy_u``, ``#stirling``.  Expressions are sums of
products; parenthesized sums distribute over products.  Division is allowed
by monomial factors only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from ..errors import ExpressionSyntaxError, GridMergeError
from .grid import Group, GridMinus, LogPart, PlusTerm, TransseriesT1, assemble, groups_of
from .series import PowerSeries


@dataclass
class _Raw:
    coef: Fraction = Fraction(1)
    mu: Fraction = Fraction(0)
    pow: Fraction = Fraction(0)
    logdeg: int = 0
    series: Optional[PowerSeries] = None

    def mul(self, other: "_Raw") -> "_Raw":
        if self.series is not None and other.series is not None:
            series = self.series.mul(other.series)
        else:
            series = self.series or other.series
        return _Raw(
            self.coef * other.coef,
            self.mu + other.mu,
            self.pow + other.pow,
            self.logdeg + other.logdeg,
            series,
        )

    def invert(self, pos: int) -> "_Raw":
        if self.series is not None or self.logdeg:
            raise ExpressionSyntaxError("can only divide by monomial factors", pos)
        return _Raw(1 / self.coef, -self.mu, -self.pow, 0, None)


class _Tok:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def startswith(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def take(self, word: str) -> bool:
        if self.startswith(word):
            self.pos += len(word)
            return True
        return False

    def expect(self, word: str):
        if not self.take(word):
            raise ExpressionSyntaxError(f"expected {word!r}", self.pos)

    def rational(self) -> Fraction:
        self.skip()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        d0 = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == d0:
            raise ExpressionSyntaxError("expected number", self.pos)
        num = int(self.text[start : self.pos])
        if self.pos < len(self.text) and self.text[self.pos] == "/" and self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit():
            self.pos += 1
            d1 = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Fraction(num, int(self.text[d1 : self.pos]))
        return Fraction(num)


def ts_parse(text: str, *, max_generators: int = 8) -> TransseriesT1:
    tok = _Tok(text)
    terms = _parse_sum(tok)
    tok.skip()
    if tok.pos != len(tok.text):
        raise ExpressionSyntaxError("trailing input", tok.pos)
    return _assemble_raw(terms, max_generators=max_generators)


def _parse_sum(tok: _Tok) -> list[_Raw]:
    out: list[_Raw] = []
    sign = Fraction(-1) if tok.take("-") else Fraction(1)
    out += [replace(t, coef=t.coef * sign) for t in _parse_product(tok)]
    while True:
        if tok.take("+"):
            out += _parse_product(tok)
        elif tok.take("-"):
            out += [replace(t, coef=-t.coef) for t in _parse_product(tok)]
        else:
            return out


def _parse_product(tok: _Tok) -> list[_Raw]:
    terms = _parse_factor(tok)
    while True:
        if tok.take("*"):
            terms = _cross(terms, _parse_factor(tok))
        elif tok.take("/"):
            pos = tok.pos
            divisor = _parse_factor(tok)
            if len(divisor) != 1:
                raise ExpressionSyntaxError("can only divide by monomial factors", pos)
            terms = _cross(terms, [divisor[0].invert(pos)])
        else:
            return terms


def _cross(a: list[_Raw], b: list[_Raw]) -> list[_Raw]:
    return [ta.mul(tb) for ta in a for tb in b]


def _parse_factor(tok: _Tok) -> list[_Raw]:
    terms = _parse_atom(tok)
    if tok.take("^"):
        pos = tok.pos
        if tok.take("("):
            e = tok.rational()
            tok.expect(")")
        else:
            e = tok.rational()
        if len(terms) == 1 and terms[0].series is None and terms[0].logdeg == 0:
            t = terms[0]
            if t.coef != 1 and e.denominator != 1:
                raise ExpressionSyntaxError("fractional power of a coefficient", pos)
            coef = t.coef ** int(e) if e.denominator == 1 else Fraction(1)
            return [_Raw(coef, t.mu * e, t.pow * e, 0, None)]
        if e.denominator != 1 or e < 1:
            raise ExpressionSyntaxError("need a positive integer power here", pos)
        out = terms
        for _ in range(int(e) - 1):
            out = _cross(out, terms)
        return out
    return terms


def _parse_atom(tok: _Tok) -> list[_Raw]:
    ch = tok.peek()
    if ch == "(":
        tok.expect("(")
        inner = _parse_sum(tok)
        tok.expect(")")
        return inner
    if tok.take("exp("):
        mu = _parse_linear_arg(tok)
        tok.expect(")")
        return [_Raw(mu=mu)]
    if tok.take("log(x)"):
        return [_Raw(logdeg=1)]
    if tok.take("series!["):
        coeffs = []
        if tok.peek() != "]":
            coeffs.append(tok.rational())
            while tok.take(","):
                coeffs.append(tok.rational())
        tok.expect("]")
        return [_Raw(series=PowerSeries.from_coeffs(coeffs))]
    if tok.take("#"):
        start = tok.pos
        while tok.pos < len(tok.text) and (tok.text[tok.pos].isalnum() or tok.text[tok.pos] == "_"):
            tok.pos += 1
        name = tok.text[start : tok.pos]
        from ..coefficients import named_series

        try:
            return [_Raw(series=named_series(name))]
        except KeyError:
            raise ExpressionSyntaxError(f"unknown series oracle #{name}", start) from None
    if ch == "x":
        tok.expect("x")
        return [_Raw(pow=Fraction(1))]
    if ch.isdigit() or ch in "+-":
        return [_Raw(coef=tok.rational())]
    raise ExpressionSyntaxError("expected an atom", tok.pos)


def _parse_linear_arg(tok: _Tok) -> Fraction:
    """The exp argument: r*x with optional rational r (including -x, x)."""
    if tok.take("x"):
        return Fraction(1)
    if tok.startswith("-x"):
        tok.take("-x")
        return Fraction(-1)
    r = tok.rational()
    tok.expect("*")
    tok.expect("x")
    return r


def _assemble_raw(terms: list[_Raw], *, max_generators: int) -> TransseriesT1:
    groups: list[Group] = []
    P: list[Fraction] = []
    for t in terms:
        if t.logdeg >= 2:
            raise GridMergeError("log^2 terms leave the depth-one space")
        if t.logdeg == 1:
            if t.mu != 0 or t.series is not None:
                raise GridMergeError("log may only multiply pure powers in T1")
            if t.pow.denominator != 1 or t.pow < 0:
                raise GridMergeError("log terms need natural powers of x")
            i = int(t.pow)
            while len(P) <= i:
                P.append(Fraction(0))
            P[i] += t.coef
            continue
        if t.series is None:
            groups.append(Group(t.mu, t.pow + 1, PowerSeries.from_coeffs([t.coef])))
        else:
            groups.append(Group(t.mu, t.pow, t.series.scale(t.coef)))
    return assemble(groups, LogPart(tuple(P), (), ()), max_generators=max_generators)


# -- printing ------------------------------------------------------------------


def _frac(c: Fraction) -> str:
    return str(c)


def _series_text(ps: PowerSeries, offset: Fraction, truncation: int) -> str:
    """Render x^offset * ps as signed fragments like 2/x^3 or x^(1/2)."""
    frags: list[tuple[int, str]] = []  # (sign, body)
    shown = 0
    l = 1
    while shown < truncation and l <= truncation * 4:
        c = ps.coeff(l)
        if ps.length is not None and l > ps.length:
            break
        if c != 0:
            power = offset - l
            frags.append((1 if c > 0 else -1, _monomial_text(abs(c), power)))
            shown += 1
        l += 1
    more = (ps.length is None and shown == truncation) or (
        ps.length is not None and any(ps.coeff(j) != 0 for j in range(l, ps.length + 1))
    )
    if not frags:
        return "0"
    out = ("-" if frags[0][0] < 0 else "") + frags[0][1]
    for sgn, body in frags[1:]:
        out += (" + " if sgn > 0 else " - ") + body
    if more:
        out += " + ..."
    return out


def _monomial_text(c: Fraction, power: Fraction) -> str:
    if power == 0:
        return _frac(c)
    if power.denominator == 1 and power < 0:
        l = -int(power)
        xpow = "x" if l == 1 else f"x^{l}"
        if c == 1:
            return f"1/{xpow}"
        if c.denominator == 1:
            return f"{c}/{xpow}"
        return f"{c.numerator}/({c.denominator}*{xpow})"
    xpart = "x" if power == 1 else (f"x^{power}" if power.denominator == 1 else f"x^({power})")
    return xpart if c == 1 else f"{_frac(c)}*{xpart}"


def _exp_text(mu: Fraction) -> str:
    if mu == 1:
        return "exp(x)"
    if mu == -1:
        return "exp(-x)"
    return f"exp({mu}*x)"


def ts_print(ts: TransseriesT1, truncation: int = 8) -> str:
    """Deterministic text form, dominant transmonomials first."""
    pieces: list[tuple[int, str]] = []

    def emit(sign: int, body: str):
        pieces.append((sign, body))

    for t in ts.plus.terms:
        body = f"{_exp_text(t.lam)}*({_series_text(t.series, t.beta, truncation)})"
        emit(1, body)
    lp = ts.log
    for i in range(len(lp.P) - 1, -1, -1):
        c = lp.p_coeff(i)
        if c == 0:
            continue
        head = "log(x)" if i == 0 else f"{_monomial_text(Fraction(1), Fraction(i))}*log(x)"
        emit(1 if c > 0 else -1, head if abs(c) == 1 else f"{abs(c)}*" + head)
    for i in range(len(lp.Q) - 1, -1, -1):
        c = lp.q_coeff(i)
        if c != 0:
            emit(1 if c > 0 else -1, _monomial_text(abs(c), Fraction(i)))
    for l in range(1, len(lp.R) + 1):
        c = lp.r_coeff(l)
        if c != 0:
            emit(1 if c > 0 else -1, _monomial_text(abs(c), Fraction(-l)))
    g = ts.minus
    for k in g.support():
        s = g.series_at(k)
        if s.is_zero_upto(truncation) and s.is_finite() and (s.length or 0) <= truncation:
            continue
        rate = g.rate(k)
        if rate == 0:
            text = _series_text(s, Fraction(0), truncation)
            if text != "0":
                if text.startswith("-"):
                    emit(-1, text[1:])
                else:
                    emit(1, text)
            continue
        body = f"{_exp_text(-rate)}*({_series_text(s, g.offset(k), truncation)})"
        emit(1, body)
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += (" + " if sign > 0 else " - ") + body
    return out


# -- JSON ----------------------------------------------------------------------


def _series_json(ps: PowerSeries, order: int):
    if ps.is_finite():
        return {"coeffs": [str(c) for c in ps.coeffs(ps.length or 0)]}
    name = getattr(ps, "oracle_name", None)
    if name:
        return {"oracle": name, "order": order}
    return {"coeffs": [str(c) for c in ps.coeffs(order)], "truncated": True}


def _series_from_json(obj) -> PowerSeries:
    if "oracle" in obj:
        from ..coefficients import named_series

        ps = named_series(obj["oracle"])
        ps.oracle_name = obj["oracle"]
        return ps
    ps = PowerSeries.from_coeffs([Fraction(c) for c in obj["coeffs"]])
    return ps


def ts_to_json(ts: TransseriesT1, order: int = 16) -> dict:
    g = ts.minus
    return {
        "minus": {
            "lambda": [str(v) for v in g.lam],
            "beta": [str(v) for v in g.beta],
            "series": {",".join(map(str, k)): _series_json(g.series_at(k), order) for k in g.support()},
        },
        "log": {
            "P": [str(c) for c in ts.log.P],
            "Q": [str(c) for c in ts.log.Q],
            "R": [str(c) for c in ts.log.R],
        },
        "plus": [
            {"lambda": str(t.lam), "beta": str(t.beta), "series": _series_json(t.series, order)}
            for t in ts.plus.terms
        ],
    }


def ts_from_json(obj: dict) -> TransseriesT1:
    gm = obj.get("minus", {})
    lam = tuple(Fraction(v) for v in gm.get("lambda", []))
    beta = tuple(Fraction(v) for v in gm.get("beta", []))
    series = {}
    for key, sj in gm.get("series", {}).items():
        k = tuple(int(v) for v in key.split(",")) if key else ()
        series[k] = _series_from_json(sj)
    lg = obj.get("log", {})
    log = LogPart(
        tuple(Fraction(c) for c in lg.get("P", [])),
        tuple(Fraction(c) for c in lg.get("Q", [])),
        tuple(Fraction(c) for c in lg.get("R", [])),
    )
    plus = [
        PlusTerm(Fraction(t["lambda"]), Fraction(t["beta"]), _series_from_json(t["series"]))
        for t in obj.get("plus", [])
    ]
    from .grid import GridPlus

    minus = GridMinus(lam=lam, beta=beta, series=series) if lam or series else GridMinus.empty()
    ts = TransseriesT1(minus=minus, log=log, plus=GridPlus(plus))
    # re-normalize (moves R into the k=0 series)
    return assemble(groups_of(ts), ts.log, seed=(lam, beta))
