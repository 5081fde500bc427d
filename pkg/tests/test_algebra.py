from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sullivan.algebra import (
    Element,
    GeneratorTable,
    UnknownGenerator,
    graded_commutator_check,
    homogeneous_monomials,
    monomial_degree,
    normal_order,
)

from conftest import table_and_elements

T = GeneratorTable(("e1", "e2", "e3", "e4", "e5", "e6", "e7"), (1, 1, 1, 1, 1, 1, 2))


def g(name):
    return Element.generator(T, name)


def mono(**exps):
    return tuple(exps.get(n, 0) for n in T.names)


def test_normal_order_odd_transposition():
    assert normal_order(T, [("e6", 1), ("e1", 1)]) == (-1, mono(e1=1, e6=1))


def test_normal_order_odd_square():
    assert normal_order(T, [("e1", 1), ("e1", 1)]) is None
    assert normal_order(T, [("e1", 2)]) is None


def test_normal_order_even_commutes():
    assert normal_order(T, [("e7", 1), ("e1", 1)]) == (1, mono(e1=1, e7=1))
    assert normal_order(T, [("e7", 2), ("e7", 1)]) == (1, mono(e7=3))


def test_odd_linear_form_squares_to_zero():
    x = g("e1") + g("e2")
    assert (x * x).is_zero()


def test_unit():
    x = g("e3") * g("e7") - g("e1") * 3
    one = Element.one(T)
    assert one * x == x == x * one


def test_triple_product_sign():
    assert (g("e1") * g("e6")) * g("e4") == Element.monomial(T, mono(e1=1, e4=1, e6=1), -1)
    assert -(g("e1") * g("e6")) * g("e4") == Element.monomial(T, mono(e1=1, e4=1, e6=1))


def test_homogeneous_monomial_counts():
    assert homogeneous_monomials(T, 0) == (T.unit(),)
    assert len(homogeneous_monomials(T, 1)) == 6
    assert len(homogeneous_monomials(T, 2)) == 16


def test_homogeneous_monomials_descending():
    ms = homogeneous_monomials(T, 2)
    assert list(ms) == sorted(ms, reverse=True)
    assert ms[0] == mono(e1=1, e2=1)


def test_monomial_count_oracle():
    # odd generators give an exterior algebra, even ones a polynomial ring
    t = GeneratorTable(("a", "b", "c", "p", "q"), (1, 1, 1, 2, 2))
    for k in range(7):
        expected = sum(comb(3, r) * ((k - r) // 2 + 1) for r in range(4) if r <= k and (k - r) % 2 == 0)
        assert len(homogeneous_monomials(t, k)) == expected
        assert all(monomial_degree(t, m) == k for m in homogeneous_monomials(t, k))


def test_commutator_examples():
    assert graded_commutator_check(g("e1"), g("e2"))
    assert g("e1") * g("e2") == -(g("e2") * g("e1"))
    assert graded_commutator_check(g("e7"), g("e1"))
    assert g("e7") * g("e1") == g("e1") * g("e7")


def test_printing():
    x = g("e1") * g("e6") * 2 - g("e7") * Fraction(1, 2)
    assert str(x) == "2*e1*e6 - 1/2*e7"
    assert str(Element.zero(T)) == "0"
    assert str(g("e7") ** 2) == "e7^2"


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        Element.generator(T, "nope")


def test_table_validation():
    with pytest.raises(ValueError):
        GeneratorTable(("a", "a"), (1, 1))
    with pytest.raises(ValueError):
        GeneratorTable(("a",), (0,))


@settings(max_examples=500)
@given(table_and_elements(2))
def test_koszul_sign_law(data):
    t, (a, b) = data
    assert graded_commutator_check(a, b)
    if a.degree is not None and b.degree is not None:
        sign = -1 if a.degree * b.degree % 2 else 1
        assert a * b == (b * a) * sign


@given(table_and_elements(3, max_degree=3))
def test_associative_and_distributive(data):
    t, (a, b, c) = data
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(table_and_elements(1))
def test_odd_elements_square_to_zero(data):
    t, (a,) = data
    if a.degree is not None and a.degree % 2:
        assert (a * a).is_zero()


@given(st.permutations(["e1", "e6", "e7", "e3"]))
def test_normal_order_deterministic(word):
    sign, m = normal_order(T, [(n, 1) for n in word])
    assert m == mono(e1=1, e3=1, e6=1, e7=1)
    # sign equals the parity of odd/odd inversions
    odd = [n for n in word if n != "e7"]
    inv = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    assert sign == (-1) ** inv
