"""Seeded random racks, rack cocycles and group cocycles for experiments and tests."""

import random

from .cocycles import RackCocycle, coboundary
from .racks import (
    affine_rack,
    alternating_group,
    conjugacy_class,
    conjugation_rack,
    permutation_rack,
    rack_orbits,
    relabel,
    symmetric_group,
    trivial_rack,
)
from .scalars import ExactScalar


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def small_racks():
    """A fixed catalogue of racks with at most 4 elements."""
    S3 = symmetric_group(3)
    A4 = alternating_group(4)
    three_cycle = next(g for g in range(A4.size) if A4.label(g) == "(1 2 3)")
    return [
        trivial_rack(1),
        trivial_rack(2),
        trivial_rack(3),
        trivial_rack(4),
        permutation_rack([1, 0]),
        permutation_rack([1, 2, 0]),
        permutation_rack([1, 0, 3, 2]),
        permutation_rack([1, 2, 3, 0]),
        affine_rack(3, 2),
        affine_rack(4, 3),
        conjugation_rack(S3, conjugacy_class(S3, 1)),
        conjugation_rack(A4, conjugacy_class(A4, three_cycle)),
    ]


def random_rack(seed, max_size=4):
    rng = _rng(seed)
    X = rng.choice([X for X in small_racks() if X.size <= max_size])
    perm = list(range(X.size))
    rng.shuffle(perm)
    return relabel(X, perm)


def random_rack_cocycle(seed, X, max_order=12):
    """Pointwise product of random cocycles of three standard shapes.

    All values are powers of one root of unity zeta_m with m <= max_order:
    constants, rack coboundaries gamma(x|>y)/gamma(y), and functions of the
    orbit of the first or of the second argument.
    """
    rng = _rng(seed)
    m = rng.randint(1, max_order)

    def z():
        return rng.randrange(m)

    n = X.size
    orbit_of = {}
    orbits = rack_orbits(X)
    for k, orb in enumerate(orbits):
        for x in orb:
            orbit_of[x] = k
    const = z()
    gamma = [z() for _ in range(n)]
    first = [z() for _ in orbits]
    second = [z() for _ in orbits]
    use = [rng.random() < 0.7 for _ in range(3)]
    expo = [[const] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if use[0]:
                expo[x][y] += gamma[X.op[x][y]] - gamma[y]
            if use[1]:
                expo[x][y] += first[orbit_of[x]]
            if use[2]:
                expo[x][y] += second[orbit_of[y]]
    return RackCocycle(X, [[ExactScalar.zeta(m, expo[x][y] % m) for y in range(n)] for x in range(n)])


def random_ybe_instance(seed, max_size=4, max_order=12):
    rng = _rng(seed)
    X = random_rack(rng, max_size)
    return X, random_rack_cocycle(rng, X, max_order)


def random_coboundary(seed, G, order=12):
    """coboundary(mu) with mu(e) = 1 and other values random powers of zeta_order."""
    rng = _rng(seed)
    mu = [
        ExactScalar.one(order) if g == G.identity else ExactScalar.zeta(order, rng.randrange(order))
        for g in range(G.size)
    ]
    return coboundary(G, mu), mu
