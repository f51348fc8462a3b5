"""Named built-in inputs, stored as the same JSON objects the CLI reads."""

import copy

from .approx import truncate_graded_algebra
from .braiding import flip
from .cocycles import coboundary, constant_cocycle
from .errors import InputError
from .racks import alternating_group, conjugacy_class, conjugation_rack, symmetric_group, trivial_rack
from .scalars import ExactScalar, as_scalar, format_scalar


def _rack_cocycle(q):
    obj = q.to_json()
    obj["type"] = "rack-cocycle"
    return obj


def _diagonal(table):
    return {"type": "diagonal", "Q": [[format_scalar(as_scalar(v)) for v in row] for row in table]}


def _truncated(A):
    obj = A.to_json()
    obj["type"] = "truncated"
    return obj


def s3_transpositions():
    S3 = symmetric_group(3)
    return conjugation_rack(S3, conjugacy_class(S3, 1))


def f2_shuffle_presentation(n):
    """Generators x_i (degree 1) and x_ij (degree 2, index i*n + j) with the
    relations x_i x_j = x_ij + x_ji, x_ij x_l = x_l x_ij = 0, x_ij x_kl = 0."""
    rels = []
    for i in range(n):
        for j in range(n):
            if i == j:
                rels.append([[1, [[1, i], [1, i]]], [-2, [[2, i * n + i]]]])
            else:
                rels.append([[1, [[1, i], [1, j]]], [-1, [[2, i * n + j]]], [-1, [[2, j * n + i]]]])
    for a in range(n * n):
        for ell in range(n):
            rels.append([[1, [[2, a], [1, ell]]]])
            rels.append([[1, [[1, ell], [2, a]]]])
        for b in range(n * n):
            rels.append([[1, [[2, a], [2, b]]]])
    return {"type": "presentation", "dims": [n, n * n], "relations": rels}


def _s3_twist():
    X = s3_transpositions()
    G = X.group
    mu = [ExactScalar.one(12)] + [ExactScalar.zeta(12, k) for k in (1, 4, 7, 3, 10)]
    sigma = coboundary(G, mu)
    q = constant_cocycle(X, -1)
    return {
        "type": "twist",
        "rack": X.to_json(),
        "q": q.to_json()["q"],
        "sigma": sigma.to_json()["sigma"],
    }


def _build():
    z3 = ExactScalar.zeta(3)
    S3X = s3_transpositions()
    A4 = alternating_group(4)
    g = next(h for h in range(A4.size) if A4.label(h) == "(1 2 3)")
    tetra = conjugation_rack(A4, conjugacy_class(A4, g))
    return {
        "trivial-rack-dim1-minus1": (
            "one-point rack with q = -1 (exterior algebra on one generator)",
            _rack_cocycle(constant_cocycle(trivial_rack(1), -1)),
        ),
        "flip-dim1": ("the flip on a line (polynomial ring)", _diagonal([[1]])),
        "flip-dim2": ("the flip on a plane (symmetric algebra)", _diagonal([[1, 1], [1, 1]])),
        "diagonal-minus1-dim3": ("diagonal braiding Q = -1 in dimension 3 (exterior algebra)", _diagonal([[-1] * 3] * 3)),
        "diagonal-zeta3-dim2": (
            "diagonal braiding [[-1, z3], [z3^2, -1]]",
            _diagonal([[-1, z3], [z3 * z3, -1]]),
        ),
        "s3-transpositions-minus1": (
            "transpositions of S_3 with q = -1 (Fomin-Kirillov algebra FK_3)",
            _rack_cocycle(constant_cocycle(S3X, -1)),
        ),
        "a4-three-cycles-minus1": (
            "the 4-element class of (1 2 3) in A_4 with q = -1",
            _rack_cocycle(constant_cocycle(tetra, -1)),
        ),
        "s3-transpositions-twist": (
            "S_3 transpositions, q = -1, with a coboundary twist in Q(zeta_12)",
            _s3_twist(),
        ),
        "shuffle-flip-dim1": (
            "degrees <= 2 of the shuffle algebra of the flip on a line",
            _truncated(truncate_graded_algebra(flip(1), "shuffle", 2)),
        ),
        "shuffle-flip-dim2": (
            "degrees <= 2 of the shuffle algebra of the flip on a plane",
            _truncated(truncate_graded_algebra(flip(2), "shuffle", 2)),
        ),
        "f2-shuffle-presentation-dim1": (
            "listed presentation of the second approximation of the shuffle algebra, dim V = 1",
            f2_shuffle_presentation(1),
        ),
        "f2-shuffle-presentation-dim2": (
            "listed presentation of the second approximation of the shuffle algebra, dim V = 2",
            f2_shuffle_presentation(2),
        ),
    }


_CACHE = {}


def fixtures():
    """Mapping name -> (description, input JSON object)."""
    if not _CACHE:
        _CACHE.update(_build())
    return _CACHE


def fixture(name):
    try:
        return copy.deepcopy(fixtures()[name][1])
    except KeyError:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(fixtures()))}") from None


def fixture_names():
    return sorted(fixtures())

