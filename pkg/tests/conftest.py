import random
from fractions import Fraction as F

import pytest

from tsr.surreal import SurrealNF


def random_rational(rng: random.Random, span: int = 6) -> F:
    return F(rng.randint(-span, span), rng.randint(1, span))


def random_nf(rng: random.Random, depth: int = 2, max_terms: int = 3) -> SurrealNF:
    """Random hereditary normal form with small rational data."""
    n = rng.randint(0, max_terms)
    terms = []
    for _ in range(n):
        if depth > 0 and rng.random() < 0.4:
            e = random_nf(rng, depth - 1, max_terms=2)
        else:
            e = SurrealNF.from_rational(random_rational(rng))
        c = random_rational(rng)
        if c != 0:
            terms.append((e, c))
    return SurrealNF(terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
