"""Normal-form arithmetic, comparison, decomposition, rendering."""

from fractions import Fraction as F

import pytest

from tsr.surreal import (
    EQ,
    GT,
    LT,
    SurrealNF,
    decompose,
    nf_cmp,
    nf_inv_of_monomial,
    omega,
    omega_map,
    one,
    parse_nf,
    render_nf,
)
from conftest import random_nf

W = omega()


def rat(q) -> SurrealNF:
    return SurrealNF.from_rational(F(q))


class TestArithmetic:
    def test_like_term_collection(self):
        assert W + 2 * W == SurrealNF.monomial(one(), 3)

    def test_poly_mul_example(self):
        # (w^w + 3) * 2w = 2*w^(w+1) + 6*w
        lhs = (SurrealNF.monomial(W) + rat(3)) * (2 * W)
        expected = SurrealNF.monomial(W + one(), 2) + SurrealNF.monomial(one(), 6)
        assert lhs == expected

    def test_monomial_inverse(self):
        m = SurrealNF.monomial(rat(2), 4)
        assert nf_inv_of_monomial(m) == SurrealNF.monomial(rat(-2), F(1, 4))
        with pytest.raises(ValueError):
            nf_inv_of_monomial(W + one())

    def test_field_laws_randomized(self, rng):
        for _ in range(200):
            a, b, c = (random_nf(rng) for _ in range(3))
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == SurrealNF.zero()

    def test_order_compatible_with_ring(self, rng):
        for _ in range(200):
            a, b = random_nf(rng), random_nf(rng)
            diff = b - a
            if nf_cmp(a, b) == LT:
                assert not diff.is_zero() and diff.terms[0][1] > 0
            elif nf_cmp(a, b) == GT:
                assert not diff.is_zero() and diff.terms[0][1] < 0
            else:
                assert diff.is_zero()


class TestComparison:
    def test_infinite_beats_any_real(self):
        assert nf_cmp(W, rat(10**6)) == GT

    def test_equal(self):
        a = SurrealNF.monomial(rat(-1), 1)
        assert nf_cmp(a, a) == EQ

    def test_recursive_exponent_comparison(self):
        # w^w > 5*w^2 because w > 2 in the exponents
        assert nf_cmp(SurrealNF.monomial(W), SurrealNF.monomial(rat(2), 5)) == GT


class TestDecompose:
    def test_three_parts(self):
        a = 2 * W + rat(3) + SurrealNF.monomial(rat(-1), 5)
        inf, real, small = decompose(a)
        assert inf == 2 * W
        assert real == 3
        assert small == SurrealNF.monomial(rat(-1), 5)
        assert inf + SurrealNF.from_rational(real) + small == a

    def test_pure_real(self):
        assert decompose(rat(7)) == (SurrealNF.zero(), 7, SurrealNF.zero())

    def test_zero(self):
        assert decompose(SurrealNF.zero()) == (SurrealNF.zero(), 0, SurrealNF.zero())

    def test_partition_random(self, rng):
        for _ in range(100):
            a = random_nf(rng)
            inf, real, small = decompose(a)
            assert inf + SurrealNF.from_rational(real) + small == a


class TestOmegaMap:
    def test_basic_values(self):
        assert omega_map(SurrealNF.zero()) == one()
        assert omega_map(one()) == W
        assert omega_map(SurrealNF.monomial(rat(-1))) == SurrealNF.monomial(SurrealNF.monomial(rat(-1)))

    def test_monotone_and_archimedean(self, rng):
        for _ in range(60):
            x, y = random_nf(rng), random_nf(rng)
            if nf_cmp(x, y) == LT:
                wx, wy = omega_map(x), omega_map(y)
                assert nf_cmp(wx, wy) == LT
                for n in (1, 1000, 10**6):
                    assert nf_cmp(n * wx, wy) == LT


class TestRendering:
    @pytest.mark.parametrize(
        "text",
        ["0", "w^w - 1", "w^(w-1) + w^(w-2) + 2*w^(w-3)", "3/4", "-w + 1/2", "w^(-1)", "-5 + 1/2*w^(-2)"],
    )
    def test_round_trip_from_text(self, text):
        assert render_nf(parse_nf(text)) == text

    def test_round_trip_random(self, rng):
        for _ in range(150):
            a = random_nf(rng)
            assert parse_nf(render_nf(a)) == a

    def test_canonical_examples(self):
        assert render_nf(SurrealNF.monomial(W) - one()) == "w^w - 1"
        assert render_nf(SurrealNF.zero()) == "0"

    def test_json_round_trip(self, rng):
        for _ in range(100):
            a = random_nf(rng)
            assert SurrealNF.from_json(a.to_json()) == a
