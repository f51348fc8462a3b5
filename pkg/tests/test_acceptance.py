"""Acceptance suite: eleven criteria, exact arithmetic, zero tolerance.

Each test prints its own PASS line (visible with -s); the conftest summary
prints one PASS/FAIL line per criterion at the end of every run.
"""

import itertools
import json
import random
import time

from helpers import fixture_braiding, random_vector
from oracles import (
    all_reduced_words,
    dense_symmetrizer,
    dense_symmetrizer_monomial,
    exact_rank,
    flip_dense,
    s3_transposition_data,
    signed_sum_over_sn,
)

from nichols.approx import (
    approximation_dims,
    cover_check,
    cover_dims,
    extension_dims,
    nichols_dims,
    random_truncated_algebra,
)
from nichols.braiding import (
    Braiding,
    BraidWord,
    braid_operator,
    braiding_from_rack,
    check_yang_baxter,
    symmetrize,
)
from nichols.cli import execute
from nichols.cocycles import twist_rack_cocycle, validate_rack_cocycle
from nichols.fixtures import fixture, fixture_names
from nichols.instances import random_coboundary, random_rack, random_rack_cocycle, random_ybe_instance
from nichols.jobs import build_truncated, build_twist
from nichols.linalg import SparseMatrix
from nichols.tensor import GradedGenerators, free_dims, shuffle_product, tensor_vectors
from nichols.twist import twist_invariance_check, verify_intertwining


def report(number, text):
    print(f"criterion {number} PASS: {text}")


def braiding_fixture_names():
    return [n for n in fixture_names() if fixture(n)["type"] in ("rack-cocycle", "diagonal", "twist", "braiding")]


def test_criterion_01_exterior_line():
    start = time.perf_counter()
    c = fixture_braiding("trivial-rack-dim1-minus1")
    dims = nichols_dims(c, 6).dims
    elapsed = time.perf_counter() - start
    assert dims == [1, 1, 0, 0, 0, 0, 0]
    # on a line, Q_n is multiplication by the signed count of permutations
    assert [1] + [int(signed_sum_over_sn(n) != 0) for n in range(1, 7)] == dims
    assert elapsed < 1
    report(1, f"{dims} in {elapsed:.2f}s")


def test_criterion_02_symmetric_algebra():
    start = time.perf_counter()
    dims = nichols_dims(fixture_braiding("flip-dim2"), 6).dims
    elapsed = time.perf_counter() - start
    assert dims == [1, 2, 3, 4, 5, 6, 7]
    oracle = [1] + [exact_rank(dense_symmetrizer(flip_dense(2), 2, n)) for n in range(1, 7)]
    assert dims == oracle
    assert elapsed < 5
    report(2, f"{dims} in {elapsed:.2f}s")


def test_criterion_03_exterior_cube():
    start = time.perf_counter()
    dims = nichols_dims(fixture_braiding("diagonal-minus1-dim3"), 4).dims
    elapsed = time.perf_counter() - start
    assert dims == [1, 3, 3, 1, 0]
    oracle = [1] + [exact_rank(dense_symmetrizer(flip_dense(3, -1), 3, n)) for n in range(1, 5)]
    assert dims == oracle
    assert elapsed < 5
    report(3, f"{dims} in {elapsed:.2f}s")


def test_criterion_04_s3_transpositions():
    start = time.perf_counter()
    c = fixture_braiding("s3-transpositions-minus1")
    dims = nichols_dims(c, 6).dims
    agree = cover_check(c, 2, 6)
    first = cover_check(c, 1, 2)
    elapsed = time.perf_counter() - start

    # oracle: the same braiding rebuilt from sympy permutations, dense ranks
    _, _, dense_c = s3_transposition_data()
    oracle = [1] + [exact_rank(dense_symmetrizer_monomial(dense_c, 3, n)) for n in range(1, 7)]
    assert dims == oracle == [1, 3, 4, 3, 1, 0, 0]
    assert agree.to_json()["verdict"] == "agree"
    assert first.to_json()["verdict"] == "mismatch"
    assert first.to_json()["mismatch"] == {"degree": 2, "cover_dim": 9, "nichols_dim": oracle[2]}
    assert elapsed < 120
    report(4, f"dims {dims}, d=2 agree, d=1 mismatch 9 vs 4, {elapsed:.2f}s")


def corrupted_flip():
    # exchange the columns of e0(x)e0 and e0(x)e1 in the dim-2 flip
    entries = {(2, 0): 1, (0, 1): 1, (1, 2): 1, (3, 3): 1}
    m = SparseMatrix.from_dense([[entries.get((r, c), 0) for c in range(4)] for r in range(4)])
    return Braiding(m, check=False)


def test_criterion_05_yang_baxter_suite():
    rng = random.Random(20240605)
    sizes, orders = set(), set()
    for _ in range(50):
        X, q = random_ybe_instance(rng, max_size=4, max_order=12)
        assert X.size <= 4 and q.modulus <= 12
        assert validate_rack_cocycle(X, q) is None
        assert check_yang_baxter(braiding_from_rack(X, q)) is None
        sizes.add(X.size)
        orders.add(q.modulus)
    bad = check_yang_baxter(corrupted_flip())
    assert bad is not None and bad.kind == "yang-baxter"
    assert tuple(bad.witness) == (0, 0, 0)
    report(5, f"50 instances (sizes {sorted(sizes)}, moduli {sorted(orders)}), corrupted flip located at {bad.witness}")


def test_criterion_06_matsumoto_well_defined():
    names = braiding_fixture_names()
    checked = 0
    for name in names:
        c = fixture_braiding(name)
        for n in range(1, 5):
            for w in itertools.permutations(range(1, n + 1)):
                words = all_reduced_words(w)
                ops = {braid_operator(c, n, BraidWord(n, word)) for word in words}
                assert len(ops) == 1, (name, w)
                checked += len(words)
    assert len(names) >= 6
    report(6, f"{checked} reduced words over {len(names)} fixtures, n <= 4")


def test_criterion_07_omega_multiplicative():
    rng = random.Random(7)
    for name in ("flip-dim2", "s3-transpositions-minus1"):
        c = fixture_braiding(name)
        for _ in range(30):
            p = rng.randint(0, 5)
            q = rng.randint(0, 5 - p)
            u = random_vector(rng, c.dim**p, c.modulus, density=0.4)
            v = random_vector(rng, c.dim**q, c.modulus, density=0.4)
            lhs = symmetrize(c, p + q, tensor_vectors(u, v, c.dim**q))
            rhs = shuffle_product(c, symmetrize(c, p, u), p, symmetrize(c, q, v), q)
            assert lhs == rhs, (name, p, q)
    report(7, "30 pairs on each of flip-dim2 and s3-transpositions-minus1")


def test_criterion_08_extension_restricts():
    rng = random.Random(8)
    for _ in range(25):
        A = random_truncated_algebra(rng, max_dim=3, max_d=3)
        assert A.d <= 3 and max(A.dims) <= 3
        assert extension_dims(A, A.d).dims == [1] + list(A.dims)
    golden = extension_dims(build_truncated(fixture("shuffle-flip-dim1")), 3).dims
    assert golden == [1, 1, 1, 1]
    report(8, f"25 random algebras, shuffle-flip-dim1 extends to {golden}")


def small_sources():
    out = {name: fixture_braiding(name) for name in braiding_fixture_names()}
    out = {k: c for k, c in out.items() if c.dim <= 3}
    rng = random.Random(9)
    for k in range(4):
        X = random_rack(rng, max_size=3)
        out[f"random-{k}"] = braiding_from_rack(X, random_rack_cocycle(rng, X, 6))
    return out


def test_criterion_09_approximation_is_cover():
    checked = 0
    for name, c in small_sources().items():
        N = 5
        for d in (1, 2, 3):
            assert approximation_dims(c, "tensor", d, N).dims == free_dims_of(c, N), (name, d)
            assert approximation_dims(c, "nichols", d, N).dims == cover_dims(c, d, N).dims, (name, d)
            checked += 2
    report(9, f"{checked} (source, tag, d) triples with N = 5")


def free_dims_of(c, N):
    # the tensor algebra has no relations, so every cover of it is free
    dims = free_dims(GradedGenerators([c.dim]), N).dims
    assert dims == cover_dims(c, 1, N).dims
    return dims


def test_criterion_10_twist_invariance():
    start = time.perf_counter()
    q, _, _ = build_twist(fixture("s3-transpositions-twist"))
    assert braiding_from_rack(q.rack, q) == fixture_braiding("s3-transpositions-minus1")
    G = q.rack.group
    rng = random.Random(10)
    for _ in range(20):
        sigma, _ = random_coboundary(rng, G)
        qprime, bad = twist_rack_cocycle(q.rack, q, sigma)
        assert bad is None
        for n in range(2, 5):
            assert verify_intertwining(q, qprime, sigma, n) is None
        rep = twist_invariance_check(q, sigma, 2, 5, qprime=qprime)
        assert rep.ok and rep.q_dims == rep.qprime_dims == [1, 3, 4, 3, 1, 0]
        for d in (1, 2):
            a = cover_check(braiding_from_rack(q.rack, q), d, 5).to_json()
            b = cover_check(braiding_from_rack(qprime.rack, qprime), d, 5).to_json()
            assert a == b
    elapsed = time.perf_counter() - start
    assert elapsed < 300
    report(10, f"20 coboundary twists in {elapsed:.1f}s")


ACCEPTANCE_JOBS = [
    {"command": "nichols", "input": "fixture:trivial-rack-dim1-minus1", "N": 6},
    {"command": "nichols", "input": "fixture:flip-dim2", "N": 6, "format": "tsv"},
    {"command": "nichols", "input": "fixture:diagonal-minus1-dim3", "N": 4},
    {"command": "nichols", "input": "fixture:s3-transpositions-minus1", "N": 6},
    {"command": "cover-check", "input": "fixture:s3-transpositions-minus1", "d": 2, "N": 6},
    {"command": "cover-check", "input": "fixture:s3-transpositions-minus1", "d": 1, "N": 2},
    {"command": "ybe-suite", "seed": 5, "count": 50},
    {"command": "symmetrizer", "input": "fixture:a4-three-cycles-minus1", "n": 4},
    {"command": "shuffle", "input": "fixture:s3-transpositions-minus1", "p": 2, "q": 2, "u": {"1": "1", "5": "2"}, "v": {"3": "-1"}},
    {"command": "extension-suite", "seed": 8, "count": 25},
    {"command": "approx", "input": "fixture:s3-transpositions-minus1", "tag": "nichols", "d": 3, "N": 5},
    {"command": "twist", "input": "fixture:s3-transpositions-twist", "d": 2, "N": 5},
]


def test_criterion_11_determinism(tmp_path):
    for k, job in enumerate(ACCEPTANCE_JOBS):
        path = tmp_path / f"job{k}.json"
        path.write_text(json.dumps(job))
        serial = execute(["--job", str(path), "--workers", "1"])
        parallel = execute(["--job", str(path), "--workers", "2"])
        again = execute(["--job", str(path), "--workers", "2"])
        assert serial[0] in (0, 1)
        assert serial[:2] == parallel[:2] == again[:2], job["command"]
    report(11, f"{len(ACCEPTANCE_JOBS)} jobs byte-identical with 1 and 2 workers")
