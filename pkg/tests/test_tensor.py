import math
import random

import pytest
from helpers import fixture_braiding, random_vector
from hypothesis import given
from hypothesis import strategies as st
from oracles import classical_shuffles, ideal_dims_recursive

from nichols.braiding import flip, index_word, symmetrize, word_index
from nichols.config import Budget
from nichols.errors import BudgetExceeded, InputError
from nichols.linalg import span_rank
from nichols.scalars import ExactScalar
from nichols.tensor import (
    GradedGenerators,
    RelationSet,
    compositions,
    free_dims,
    ideal_component_dim,
    omega_component,
    quotient_dims,
    shuffle_product,
    tensor_vectors,
    word_basis,
)

ONE = ExactScalar.one()


def x_squared_minus_2t():
    gens = GradedGenerators([1, 1])
    rels = RelationSet(gens)
    rels.add_terms([(1, [(1, 0), (1, 0)]), (-2, [(2, 0)])])
    return gens, rels


# word bases


def test_word_basis_examples():
    assert word_basis(GradedGenerators([3]), 3).dim == 27
    wb = word_basis(GradedGenerators([1, 1]), 3)
    assert wb.compositions == [(1, 1, 1), (1, 2), (2, 1)] and wb.dim == 3
    wb = word_basis(GradedGenerators([2, 4]), 2)
    assert wb.compositions == [(1, 1), (2,)] and wb.dim == 8


def test_word_basis_skips_empty_degrees():
    wb = word_basis(GradedGenerators([2, 0, 1]), 3)
    assert wb.compositions == [(1, 1, 1), (3,)]
    assert wb.dim == 9


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.integers(0, 5))
def test_word_basis_enumeration(dims, n):
    gens = GradedGenerators(dims)
    wb = word_basis(gens, n)
    monos = wb.monomials()
    assert len(monos) == wb.dim
    assert wb.dim == sum(math.prod(gens.dim(p) for p in c) for c in compositions(n, len(dims)))
    for k, m in enumerate(monos):
        assert wb.index(m) == k and wb.word(k) == m


def test_degree_one_words_match_braid_indexing():
    wb = word_basis(GradedGenerators([3]), 3)
    for k in range(27):
        word = tuple(i for _, i in wb.word(k))
        assert word_index(word, 3) == k and tuple(index_word(k, 3, 3)) == word


# ideals and quotients


def test_full_degree_two_relations_fill_degree_three():
    for k in (1, 2, 3):
        gens = GradedGenerators([k])
        rels = RelationSet(gens)
        for j in range(k * k):
            rels.add(2, {j: 1})
        assert ideal_component_dim(gens, rels, 3) == k**3
        assert quotient_dims(gens, rels, 4).dims == [1, k, 0, 0, 0]


def test_no_relations():
    gens = GradedGenerators([2])
    rels = RelationSet(gens)
    assert [ideal_component_dim(gens, rels, n) for n in range(5)] == [0] * 5
    assert quotient_dims(gens, rels, 4).dims == [1, 2, 4, 8, 16] == free_dims(gens, 4).dims


def test_x_squared_minus_2t():
    gens, rels = x_squared_minus_2t()
    assert ideal_component_dim(gens, rels, 3) == 2
    assert quotient_dims(gens, rels, 3).dims == [1, 1, 1, 1]


def test_inhomogeneous_relation_rejected():
    gens = GradedGenerators([1, 1])
    rels = RelationSet(gens)
    with pytest.raises(InputError, match="inhomogeneous"):
        rels.add_terms([(1, [(1, 0)]), (1, [(2, 0)])])
    with pytest.raises(InputError):
        rels.add(2, {5: 1})


@st.composite
def relation_sets(draw):
    dim = draw(st.integers(1, 2))
    rels = {}
    for deg in (2, 3):
        k = draw(st.integers(0, 2))
        rels[deg] = [[draw(st.sampled_from([0, 0, 1, -1, 2])) for _ in range(dim**deg)] for _ in range(k)]
    return dim, rels


@given(relation_sets())
def test_ideal_dims_match_recursive_oracle(data):
    dim, raw = data
    gens = GradedGenerators([dim])
    rels = RelationSet(gens)
    for deg, vs in raw.items():
        for v in vs:
            rels.add(deg, {k: x for k, x in enumerate(v) if x})
    N = 4
    ours = [ideal_component_dim(gens, rels, n) for n in range(N + 1)]
    assert ours == ideal_dims_recursive(dim, raw, N)


@given(relation_sets(), st.integers(0, 100))
def test_ideal_dimension_is_monotone(data, seed):
    dim, raw = data
    gens = GradedGenerators([dim])
    small, big = RelationSet(gens), RelationSet(gens)
    rnd = random.Random(seed)
    for deg, vs in raw.items():
        for v in vs:
            vec = {k: x for k, x in enumerate(v) if x}
            big.add(deg, vec)
            if rnd.random() < 0.5:
                small.add(deg, vec)
    for n in range(1, 5):
        assert ideal_component_dim(gens, small, n) <= ideal_component_dim(gens, big, n)


def test_quotient_budget_reports_partial_table():
    gens = GradedGenerators([3])
    rels = RelationSet(gens)
    rels.add(2, {1: 1, 3: -1})
    with pytest.raises(BudgetExceeded) as info:
        quotient_dims(gens, rels, 6, budget=Budget(ambient=100))
    part = info.value.partial
    assert part.dims[:5] == quotient_dims(gens, rels, 4).dims
    assert part.dims[5:] == [None, None]
    assert part.flags[5:] == ["budget-truncated"] * 2


# shuffles


def test_shuffle_unit():
    c = fixture_braiding("s3-transpositions-minus1")
    v = random_vector(random.Random(1), 9, c.modulus)
    assert shuffle_product(c, {0: ONE}, 0, v, 2) == v
    assert shuffle_product(c, v, 2, {0: ONE}, 0) == v


def test_shuffle_examples():
    assert shuffle_product(flip(1), {0: ONE}, 1, {0: ONE}, 1) == {0: ExactScalar.rational(2)}
    c = fixture_braiding("trivial-rack-dim1-minus1")
    assert shuffle_product(c, {0: ONE}, 1, {0: ONE}, 1) == {}


@given(st.integers(1, 3), st.lists(st.integers(0, 2), max_size=3), st.lists(st.integers(0, 2), max_size=3))
def test_flip_shuffle_is_classical(dim, a, b):
    a = [x % dim for x in a]
    b = [x % dim for x in b]
    got = shuffle_product(flip(dim), {word_index(a, dim): ONE}, len(a), {word_index(b, dim): ONE}, len(b))
    expected = {word_index(w, dim): ExactScalar.rational(k) for w, k in classical_shuffles(tuple(a), tuple(b)).items()}
    assert got == expected


OMEGA_FIXTURES = ["flip-dim2", "s3-transpositions-minus1", "diagonal-zeta3-dim2", "s3-transpositions-twist"]


@given(st.sampled_from(OMEGA_FIXTURES), st.integers(0, 4), st.integers(0, 4), st.integers(0, 10**6))
def test_omega_is_multiplicative(name, p, q, seed):
    if p + q > 5:
        q = 5 - p
    c = fixture_braiding(name)
    if c.dim ** (p + q) > 300:
        return
    rnd = random.Random(seed)
    u = random_vector(rnd, c.dim**p, c.modulus, density=0.3)
    v = random_vector(rnd, c.dim**q, c.modulus, density=0.3)
    lhs = symmetrize(c, p + q, tensor_vectors(u, v, c.dim**q))
    rhs = shuffle_product(c, symmetrize(c, p, u), p, symmetrize(c, q, v), q)
    assert lhs == rhs


@given(st.sampled_from(OMEGA_FIXTURES), st.integers(0, 10**6))
def test_shuffle_is_associative(name, seed):
    c = fixture_braiding(name)
    rnd = random.Random(seed)
    p, q, r = rnd.randint(0, 2), rnd.randint(0, 2), rnd.randint(0, 2)
    u, v, w = (random_vector(rnd, c.dim**k, c.modulus, density=0.4) for k in (p, q, r))
    left = shuffle_product(c, shuffle_product(c, u, p, v, q), p + q, w, r)
    right = shuffle_product(c, u, p, shuffle_product(c, v, q, w, r), q + r)
    assert left == right


@pytest.mark.parametrize("dim", [2, 3])
def test_mixed_tensor_is_not_a_product_of_degree_one_shuffles(dim):
    c = flip(dim)
    products = [shuffle_product(c, {i: ONE}, 1, {j: ONE}, 1) for i in range(dim) for j in range(dim)]
    r = span_rank(products, dim * dim)
    target = {word_index((0, 1), dim): ONE}
    assert span_rank(products + [target], dim * dim) == r + 1


def test_shuffle_budget():
    with pytest.raises(BudgetExceeded):
        shuffle_product(flip(2), {0: ONE}, 3, {0: ONE}, 3, budget=Budget(ambient=10))


def test_omega_component_examples():
    c = fixture_braiding("diagonal-zeta3-dim2")
    from nichols.linalg import SparseMatrix

    assert omega_component(c, 1) == SparseMatrix.identity(2, c.modulus)
    assert omega_component(c, 2) == SparseMatrix.identity(4, c.modulus) + c.matrix
