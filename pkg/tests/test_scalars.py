import pickle
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import cyclotomic_coeffs, reduce_mod_cyclotomic

from nichols.errors import InputError, ModulusMismatch
from nichols.scalars import (
    ExactScalar,
    cyclotomic_polynomial,
    embed,
    embed_all,
    euler_phi,
    format_scalar,
    parse_scalar,
    zeta,
)

MODULI = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, modulus=None):
    n = modulus if modulus is not None else draw(st.sampled_from(MODULI))
    coeffs = draw(st.lists(rationals, min_size=1, max_size=euler_phi(n) + 3))
    return ExactScalar(coeffs, n)


@st.composite
def triples(draw):
    n = draw(st.sampled_from(MODULI))
    return draw(scalars(n)), draw(scalars(n)), draw(scalars(n))


def test_zeta4_squared_is_minus_one():
    assert zeta(4) * zeta(4) == -1


def test_zeta6_squared():
    assert zeta(6) * zeta(6) == zeta(6) - 1


@pytest.mark.parametrize("n", MODULI)
def test_inverse_of_zeta(n):
    assert zeta(n).inverse() == zeta(n, n - 1)
    assert zeta(n) ** n == 1


@pytest.mark.parametrize("n", range(1, 41))
def test_cyclotomic_polynomial_matches_sympy(n):
    assert tuple(cyclotomic_polynomial(n)) == cyclotomic_coeffs(n)
    assert len(ExactScalar.zero(n).coeffs) == euler_phi(n) == len(cyclotomic_coeffs(n)) - 1


@pytest.mark.parametrize("n", range(1, 25))
def test_zeta_is_a_root_of_its_cyclotomic_polynomial(n):
    z = zeta(n)
    total = ExactScalar.zero(n)
    for k, a in enumerate(cyclotomic_polynomial(n)):
        total = total + a * z**k
    assert total == 0


@given(st.sampled_from(MODULI), st.lists(rationals, min_size=1, max_size=30))
def test_reduction_agrees_with_polynomial_remainder(n, coeffs):
    x = ExactScalar(coeffs, n)
    expected = reduce_mod_cyclotomic(coeffs, n)
    expected += [Fraction(0)] * (euler_phi(n) - len(expected))
    assert list(x.coeffs) == expected


@given(triples())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(scalars())
def test_format_parse_round_trip(x):
    text = format_scalar(x)
    y = parse_scalar(text)
    assert y == x and y.modulus == x.modulus
    assert format_scalar(y) == text


def test_parse_examples():
    assert parse_scalar("-1") == -1
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("z (mod 4)") == zeta(4)
    assert parse_scalar("1 - 2*z^2 (mod 5)") == 1 - 2 * zeta(5, 2)
    assert parse_scalar("-z (mod 3)") == -zeta(3)


@pytest.mark.parametrize("bad", ["", "z", "1 2", "1 +", "* z (mod 3)", 5])
def test_parse_rejects_garbage(bad):
    with pytest.raises(InputError):
        parse_scalar(bad)


def test_mixed_moduli_need_embedding():
    with pytest.raises(ModulusMismatch):
        zeta(3) + zeta(4)
    with pytest.raises(ModulusMismatch):
        zeta(3) == zeta(6)
    a, b = embed(zeta(3), 12), embed(zeta(4), 12)
    assert a == zeta(12, 4) and b == zeta(12, 3)
    assert a * b == zeta(12, 7)
    (x, y), m = embed_all([zeta(3), zeta(4)])
    assert m == 12 and x == a and y == b


def test_embedding_requires_divisibility():
    with pytest.raises(ModulusMismatch):
        embed(zeta(4), 6)


@given(st.sampled_from([(2, 4), (3, 6), (3, 12), (4, 12), (6, 12), (5, 10)]), st.data())
def test_embedding_is_a_ring_homomorphism(pair, data):
    n, m = pair
    a, b = data.draw(scalars(n)), data.draw(scalars(n))
    assert embed(a + b, m) == embed(a, m) + embed(b, m)
    assert embed(a * b, m) == embed(a, m) * embed(b, m)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ExactScalar.one(5) / ExactScalar.zero(5)
    with pytest.raises(ZeroDivisionError):
        ExactScalar.zero(3).inverse()


def test_integers_and_fractions_mix_freely():
    z = zeta(5)
    assert z + 1 - 1 == z
    assert 2 * z / 2 == z
    assert Fraction(1, 3) * z * 3 == z


def test_pickle_and_hash():
    x = parse_scalar("1/2 - 3*z^3 (mod 7)")
    y = pickle.loads(pickle.dumps(x))
    assert x == y and hash(x) == hash(y)
    assert hash(ExactScalar.rational(2, 4)) == hash(ExactScalar([2, 0], 4))


def test_invalid_modulus():
    with pytest.raises(InputError):
        ExactScalar([1], 0)
