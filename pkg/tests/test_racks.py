import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from nichols.errors import InputError
from nichols.instances import small_racks
from nichols.racks import (
    GroupTable,
    Rack,
    alternating_group,
    conjugacy_class,
    conjugation_rack,
    cyclic_group,
    element_order,
    find_nonassociative,
    is_quandle,
    rack_orbits,
    relabel,
    symmetric_group,
    trivial_rack,
    validate_rack,
)


def by_label(G, label):
    return next(g for g in range(G.size) if G.label(g) == label)


def test_trivial_table_is_a_rack():
    for n in range(1, 5):
        assert validate_rack([list(range(n)) for _ in range(n)]) is None


def test_s3_transpositions_form_a_rack():
    S3 = symmetric_group(3)
    X = conjugation_rack(S3, conjugacy_class(S3, by_label(S3, "(1 2)")))
    assert X.size == 3
    assert validate_rack(X) is None


def test_swap_permutation_rack_is_valid():
    # x |> y = swap(y) for both x: self-distributive
    assert validate_rack([[1, 0], [1, 0]]) is None


def test_mixed_rows_break_self_distributivity():
    bad = validate_rack([[0, 1], [1, 0]])
    assert bad.kind == "rack-self-distributivity"
    assert bad.witness == (1, 0, 0)
    # the witness really violates the axiom
    op = [[0, 1], [1, 0]]
    x, y, z = bad.witness
    assert op[x][op[y][z]] != op[op[x][y]][op[x][z]]


def test_non_bijective_row():
    bad = validate_rack([[0, 0], [0, 1]])
    assert bad.kind == "rack-bijectivity" and bad.witness == (0,)


@pytest.mark.parametrize("table", [[[0, 2], [1, 0]], [[0, 1]], [], [[0, -1], [1, 0]]])
def test_malformed_tables(table):
    with pytest.raises(InputError):
        validate_rack(table)


def test_conjugation_matches_sympy():
    S3 = symmetric_group(3)
    X = conjugation_rack(S3, conjugacy_class(S3, by_label(S3, "(1 2)")))
    pos = {lab: i for i, lab in enumerate(X.labels)}
    assert X.op[pos["(1 2)"]][pos["(1 3)"]] == pos["(2 3)"]
    # independent check with sympy permutations on {0, 1, 2}
    perms = {"(1 2)": Permutation(0, 1, size=3), "(1 3)": Permutation(0, 2, size=3), "(2 3)": Permutation(1, 2, size=3)}
    back = {tuple(p.array_form): lab for lab, p in perms.items()}
    for a, b in itertools.product(perms, repeat=2):
        x, y = perms[a], perms[b]
        expected = back[tuple((x * y * x**-1).array_form)]
        assert X.labels[X.op[pos[a]][pos[b]]] == expected


def test_singleton_classes():
    S3 = symmetric_group(3)
    e = conjugation_rack(S3, [S3.identity])
    assert e.op == ((0,),)
    t = conjugation_rack(S3, [by_label(S3, "(1 2)")])
    assert t.op == ((0,),) and t.labels == ("(1 2)",)


def test_escaping_conjugate_is_named():
    S3 = symmetric_group(3)
    with pytest.raises(InputError, match=r"\(1 2\) \|> \(1 3\) = \(2 3\)"):
        conjugation_rack(S3, [by_label(S3, "(1 2)"), by_label(S3, "(1 3)")])


def test_symmetric_group_examples():
    assert symmetric_group(1).size == 1
    S3 = symmetric_group(3)
    assert S3.size == 6 and S3.identity == 0 and S3.label(0) == "()"
    assert sum(1 for g in range(6) if element_order(S3, g) == 2) == 3
    assert find_nonassociative(S3) is None
    with pytest.raises(InputError):
        symmetric_group(7)


def test_symmetric_group_product_is_composition():
    S3 = symmetric_group(3)
    a, b = by_label(S3, "(1 2)"), by_label(S3, "(2 3)")
    # (1 2)(2 3) maps 1->2, 2->3, 3->1 when the right factor acts first
    assert S3.label(S3.mul[a][b]) == "(1 2 3)"


def test_group_table_validation():
    with pytest.raises(InputError):
        GroupTable([[0, 1], [1, 1]])
    with pytest.raises(InputError):
        GroupTable.from_json({"mul": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]})
    Z3 = cyclic_group(3)
    assert GroupTable.from_json(Z3.to_json()) == Z3


@pytest.mark.parametrize("n", [3, 4])
def test_conjugacy_classes_give_valid_quandles(n):
    for G in (symmetric_group(n), alternating_group(n)):
        for g in range(G.size):
            X = conjugation_rack(G, conjugacy_class(G, g))
            assert validate_rack(X) is None
            assert is_quandle(X)


@given(st.integers(0, 11), st.permutations(range(4)))
def test_orbits_stable_under_relabeling(k, perm):
    X = small_racks()[k]
    perm = [p for p in perm if p < X.size] if X.size < 4 else list(perm)
    Y = relabel(X, perm)
    assert validate_rack(Y) is None
    expected = sorted(sorted(perm[x] for x in orb) for orb in rack_orbits(X))
    assert rack_orbits(Y) == expected


def test_catalogue_racks_are_valid():
    for X in small_racks():
        assert validate_rack(X) is None
        if X.embedded:
            Rack.from_json(X.to_json())


def test_orbit_examples():
    assert rack_orbits(trivial_rack(3)) == [[0], [1], [2]]
    S3 = symmetric_group(3)
    X = conjugation_rack(S3, conjugacy_class(S3, 1))
    assert rack_orbits(X) == [[0, 1, 2]]


def test_json_round_trip():
    for X in small_racks():
        assert Rack.from_json(X.to_json()) == X


def test_json_rejects_invalid_rack_and_bad_embedding():
    with pytest.raises(InputError):
        Rack.from_json({"op": [[0, 1], [1, 0]]})
    S3 = symmetric_group(3)
    X = conjugation_rack(S3, conjugacy_class(S3, 1))
    obj = X.to_json()
    # every relabeling of the three transpositions is an automorphism, so
    # break the embedding with the identity element instead
    obj["elements"] = [S3.identity] + obj["elements"][1:]
    with pytest.raises(InputError):
        Rack.from_json(obj)
