"""LazyNF streams and Conway Limits with stabilization schedules."""

from fractions import Fraction as F
from math import factorial

import pytest

from tsr.errors import NotStabilizedError
from tsr.surreal import LazyNF, SurrealNF, lim, omega, one, schedule_from_nf

W = omega()


def inv_omega_pow(k: int) -> SurrealNF:
    return SurrealNF.from_rational(-k)


def partial_sum(coeff, n: int) -> SurrealNF:
    total = SurrealNF.zero()
    for k in range(n + 1):
        total = total + SurrealNF.monomial(inv_omega_pow(k + 1), coeff(k))
    return total


def geometric_seq(n: int) -> SurrealNF:
    return partial_sum(lambda k: F(1, 2**k), n)


def factorial_seq(n: int) -> SurrealNF:
    return partial_sum(lambda k: factorial(k), n)


def descending_schedule(n: int):
    return [(inv_omega_pow(k + 1), k) for k in range(n)]


class TestLim:
    def test_geometric(self):
        value = lim(geometric_seq, descending_schedule(10))
        for k, (e, c) in enumerate(value.terms(6)):
            assert e == inv_omega_pow(k + 1)
            assert c == F(1, 2**k)

    def test_factorial_series_is_conway_convergent(self):
        value = lim(factorial_seq, descending_schedule(10))
        assert [c for _, c in value.terms(5)] == [1, 1, 2, 6, 24]

    def test_constant_sequence(self):
        a = SurrealNF.monomial(W, 2) - one()
        value = lim(lambda n: a, schedule_from_nf(a))
        assert value.truncate(5) == a

    def test_not_stabilized_detected(self):
        def flapping(n: int) -> SurrealNF:
            return SurrealNF.from_rational(n % 2)

        value = lim(flapping, [(SurrealNF.zero(), 3)])
        with pytest.raises(NotStabilizedError):
            value.terms(1)

    def test_strictly_decreasing_enforced(self):
        bad = LazyNF.from_terms([(one(), F(1)), (one(), F(2))])
        with pytest.raises(ValueError):
            bad.terms(2)


class TestLimLaws:
    def test_linearity_on_truncations(self):
        N = 6
        a, b = F(3), F(-2)
        combo = lim(
            lambda n: a * geometric_seq(n) + b * factorial_seq(n),
            descending_schedule(N + 2),
        )
        separate = lim(geometric_seq, descending_schedule(N + 2)).scale(a) + lim(
            factorial_seq, descending_schedule(N + 2)
        ).scale(b)
        assert combo.truncate(N) == separate.truncate(N)

    def test_products_on_truncations(self):
        # Lim(x_n * y_n) agrees with Lim(x_n) * Lim(y_n) termwise.
        N = 6

        def prod_seq(n: int) -> SurrealNF:
            return geometric_seq(n) * factorial_seq(n)

        # the coefficient of w^-(m) involves factors up to index m, settled by n = m
        schedule = [(inv_omega_pow(m), m) for m in range(2, N + 4)]
        left = lim(prod_seq, schedule)
        right = lim(geometric_seq, descending_schedule(N + 6)).truncate(N + 4) * lim(
            factorial_seq, descending_schedule(N + 6)
        ).truncate(N + 4)
        expect = [t for t in right.terms if t[0] >= inv_omega_pow(N + 1)]
        assert left.terms(len(expect)) == expect

    def test_render_with_ellipsis(self):
        value = lim(factorial_seq, descending_schedule(12))
        assert value.render(3) == "w^(-1) + w^(-2) + 2*w^(-3) + ..."
