import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import exact_rank, int_matrix

from nichols.errors import InputError, ModulusMismatch
from nichols.linalg import (
    SparseMatrix,
    independent_columns,
    inverse,
    nullspace_basis,
    rank,
    row_echelon,
    solve_in_span,
    span_rank,
)
from nichols.scalars import ExactScalar, zeta

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def int_matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    sparse = draw(st.booleans())
    vals = st.sampled_from([0, 0, 0, 1, -1, 2]) if sparse else small_ints
    return [[draw(vals) for _ in range(c)] for _ in range(r)]


def mat(rows, ncols=None):
    if not rows:
        return SparseMatrix.zeros(0, ncols or 1)
    return SparseMatrix.from_dense(rows)


def test_rank_examples():
    assert rank(SparseMatrix.identity(5)) == 5
    assert rank(mat([[1, 2], [2, 4]])) == 1
    assert rank(SparseMatrix.zeros(3, 7)) == 0


def test_nullspace_examples():
    assert nullspace_basis(SparseMatrix.identity(4)) == []
    assert len(nullspace_basis(SparseMatrix.zeros(1, 3))) == 3
    (v,) = nullspace_basis(mat([[1, 1]]))
    # the canonical basis vector puts 1 on the free column; it spans (1, -1)
    assert v == {0: ExactScalar.rational(-1), 1: ExactScalar.rational(1)}


def test_span_rank_examples():
    assert span_rank([], 2) == 0
    assert span_rank([{0: 1}, {0: 1, 1: 1}, {1: 1}], 2) == 2
    assert span_rank([[1, 2, 3], [2, 4, 6]], 3) == 1
    with pytest.raises(InputError):
        span_rank([{5: 1}], 2)


@given(int_matrices())
def test_rank_matches_oracle_and_nullity(rows):
    M = mat(rows, 3)
    r = rank(M)
    assert r == exact_rank(rows) if rows else r == 0
    basis = nullspace_basis(M)
    assert r + len(basis) == M.cols
    for v in basis:
        assert M.matvec(v) == {}


@given(int_matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_operations(rows, rnd):
    if not rows:
        return
    r = rank(mat(rows))
    perm = rows[:]
    rnd.shuffle(perm)
    assert rank(mat(perm)) == r
    k = rnd.randrange(len(rows))
    scaled = [row[:] for row in rows]
    s = ExactScalar([rnd.choice([1, 2, -3]), rnd.choice([0, 1])], 3)
    M = SparseMatrix.from_dense([[ExactScalar.rational(x, 3) * (s if i == k else 1) for x in row] for i, row in enumerate(scaled)])
    assert rank(M) == r


def test_rank_over_cyclotomic_field():
    z = zeta(3)
    # rows (1, z) and (z, z^2) are proportional; (1, z^2) is not
    M = SparseMatrix.from_dense([[1, z], [z, z * z], [1, z * z]])
    assert rank(M) == 2
    (v,) = nullspace_basis(SparseMatrix.from_dense([[1, z]]))
    assert v[1] == 1 and v[0] == -z


def test_row_echelon_is_canonical():
    rows = [{0: 1, 1: 2, 3: 1}, {1: 1, 2: 1}, {0: 2, 1: 5, 2: 1, 3: 2}]
    rows = [{k: ExactScalar.rational(x) for k, x in r.items()} for r in rows]
    a = row_echelon(rows)
    b = row_echelon(list(reversed(rows)))
    assert a == b
    assert a[0] == [0, 1]


def test_independent_columns_span_the_column_space():
    M = mat([[1, 2, 0, 1], [0, 0, 1, 1], [1, 2, 1, 2]])
    cols = independent_columns(M)
    assert len(cols) == rank(M) == 2
    assert rank(M.submatrix(range(3), cols)) == 2


@given(int_matrices(max_rows=5, max_cols=5))
def test_solve_in_span(rows):
    if not rows:
        return
    M = mat(rows)
    cols = M.column_dicts()
    basis = [cols[k] for k in independent_columns(M)]
    rnd = random.Random(len(rows))
    coeffs = [ExactScalar.rational(rnd.randint(-3, 3)) for _ in basis]
    target = {}
    for a, b in zip(coeffs, basis):
        for i, x in b.items():
            target[i] = target.get(i, ExactScalar.zero()) + a * x
    target = {i: x for i, x in target.items() if x}
    assert solve_in_span(basis, target) == coeffs


def test_solve_outside_span():
    assert solve_in_span([{0: ExactScalar.one()}], {1: ExactScalar.one()}) is None


def test_inverse():
    z = zeta(5)
    M = SparseMatrix.from_dense([[1, z, 0], [0, 1, z * z], [z, 0, 1]])
    assert M @ inverse(M) == SparseMatrix.identity(3, 5)
    with pytest.raises(InputError):
        inverse(mat([[1, 2], [2, 4]]))


def test_modulus_checks():
    with pytest.raises(ModulusMismatch):
        SparseMatrix(1, 2, {(0, 0): zeta(3), (0, 1): zeta(4)})
    with pytest.raises(InputError):
        SparseMatrix(1, 1, {(1, 0): 1})


def test_parallel_rank_is_deterministic():
    rnd = random.Random(7)
    rows = [[rnd.choice([0, 0, 1, -1, 2]) for _ in range(40)] for _ in range(60)]
    M = mat(rows)
    assert rank(M, workers=2) == rank(M) == exact_rank(rows)


def test_int_matrix_round_trip():
    rows = [[1, 0, -2], [0, 3, 0]]
    assert int_matrix(mat(rows)).tolist() == rows
