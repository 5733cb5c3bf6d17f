import pytest

from flatlab.errors import DegreeMismatchError
from flatlab.perm import Permutation, parse_cycle_string


def test_identity_composition():
    sigma = parse_cycle_string("(0 1 2 3)", 4)
    ident = Permutation.identity(4)
    assert ident * sigma == sigma
    assert sigma * ident == sigma


def test_inverse_composition():
    sigma = parse_cycle_string("(0 1 2 3)", 4)
    assert sigma * sigma.inverse() == Permutation.identity(4)
    assert sigma.inverse() * sigma == Permutation.identity(4)


def test_four_cycle_squared():
    # apply-first-then convention: the square of (0 1 2 3) is (0 2)(1 3),
    # frozen by evaluating each point by hand
    sigma = parse_cycle_string("(0 1 2 3)", 4)
    assert (sigma * sigma).images == (2, 3, 0, 1)
    assert (sigma * sigma).cycle_string() == "(0 2)(1 3)"


def test_composition_order_is_left_to_right():
    a = parse_cycle_string("(0 1)", 3)
    b = parse_cycle_string("(1 2)", 3)
    # (a*b)(0) = b(a(0)) = b(1) = 2
    assert (a * b)(0) == 2
    assert (b * a)(0) == 1


def test_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        parse_cycle_string("(0 1)", 2) * parse_cycle_string("(0 1)", 3)


def test_not_a_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_orders():
    assert Permutation.identity(5).order() == 1
    assert parse_cycle_string("(0 1 2 3)", 4).order() == 4
    assert parse_cycle_string("(0 1)(2 3 4)", 5).order() == 6


def test_cycle_roundtrip():
    p = parse_cycle_string("(0 3)(1 4 2)", 5)
    assert parse_cycle_string(p.cycle_string(), 5) == p
    assert parse_cycle_string("()", 4) == Permutation.identity(4)


def test_pow():
    sigma = parse_cycle_string("(0 1 2 3 4)", 5)
    assert sigma**5 == Permutation.identity(5)
    assert sigma**-1 == sigma.inverse()
    assert sigma**7 == sigma * sigma
