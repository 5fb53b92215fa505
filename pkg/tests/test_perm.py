from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permbound.perm import (
    Permutation,
    commutator,
    element_order,
    format_permutation,
    inverse,
    parse_permutation,
    product,
    sign,
)


def perms(max_degree: int = 9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation)
    )


def perm_pairs(k: int = 2, max_degree: int = 9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.tuples(*[st.permutations(list(range(n))).map(Permutation)] * k)
    )


def test_parse_examples():
    assert parse_permutation("()", 3).is_identity()
    assert [x + 1 for x in parse_permutation("(1 2 3)", 3).images] == [2, 3, 1]
    assert [x + 1 for x in parse_permutation("(1 2)(3 4 5)", 5).images] == [2, 1, 4, 5, 3]


@pytest.mark.parametrize("text", ["(1 2", "(1 2)(2 3)", "(1 4)", "(0 1)", "(a b)", "1 2"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_permutation(text, 3)


def test_product_examples():
    t = parse_permutation("(1 2)", 2)
    assert product(t, t).is_identity()
    assert sign(parse_permutation("(1 2 3)", 3)) == 1
    assert sign(parse_permutation("(1 2)", 2)) == -1
    assert element_order(parse_permutation("(1 2)(3 4 5)", 5)) == 6


def test_product_degree_mismatch():
    with pytest.raises(ValueError):
        product(Permutation.identity(2), Permutation.identity(3))


def test_left_to_right_convention():
    # 1 -(1 2)-> 2 -(2 3)-> 3
    a = parse_permutation("(1 2)", 3)
    b = parse_permutation("(2 3)", 3)
    ab = a * b
    assert ab(0) == 2
    assert format_permutation(ab) == "(1 3 2)"


@given(perms())
def test_format_round_trip(g):
    assert parse_permutation(format_permutation(g), g.degree) == g


@given(perm_pairs(3))
def test_associative(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)


@given(perms())
def test_inverse(g):
    assert (g * inverse(g)).is_identity()
    assert (~g * g).is_identity()


@settings(max_examples=200)
@given(perm_pairs(2))
def test_sign_homomorphism(t):
    a, b = t
    assert sign(a * b) == sign(a) * sign(b)


@given(perms())
def test_order_is_exact(g):
    k = element_order(g)
    assert (g**k).is_identity()
    assert all(not (g**j).is_identity() for j in range(1, k))


@given(perm_pairs(2))
def test_commutator_even(t):
    a, b = t
    assert sign(commutator(a, b)) == 1
