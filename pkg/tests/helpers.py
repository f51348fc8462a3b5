"""Small shared builders for the test modules."""

import random

from nichols.fixtures import fixture
from nichols.jobs import build_braiding
from nichols.scalars import ExactScalar


def fixture_braiding(name):
    return build_braiding(fixture(name))


def random_vector(rng, size, modulus=1, density=0.5, spread=3):
    """Sparse vector with small random entries in Q(zeta_modulus)."""
    v = {}
    for k in range(size):
        if rng.random() < density:
            x = ExactScalar([rng.randint(-spread, spread) for _ in range(2)], modulus)
            if x:
                v[k] = x
    if not v:
        v[rng.randrange(size)] = ExactScalar.one(modulus)
    return v


def rng(seed):
    return random.Random(seed)
