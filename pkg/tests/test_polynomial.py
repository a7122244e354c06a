from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from elliptic_lc.polynomial import Polynomial, real_roots

from conftest import rationals

a = Polynomial.variable("a")


def test_display_and_factor():
    sq = (3 * a - 1) * (5 * a - 1) / 2
    assert str(4 * a - 1) == "4a - 1"
    assert sq.factored() == "(3*a - 1)*(5*a - 1)/2"
    assert sq(Fraction(1, 3)) == 0


def test_rational_roots_are_exact():
    roots = real_roots((3 * a - 1) * (5 * a - 1), 0, 1)
    assert [r.value for r in roots] == [Fraction(1, 5), Fraction(1, 3)]
    assert all(r.exact for r in roots)


def test_irrational_roots_are_enclosed():
    (r,) = real_roots(a * a - 2, 0, 2, eps=Fraction(1, 1000))
    assert not r.exact and r.value is None
    assert r.lo * r.lo < 2 < r.hi * r.hi
    assert r.hi - r.lo <= Fraction(1, 1000)


def test_zero_polynomial_has_no_roots():
    with pytest.raises(ValueError):
        real_roots(Polynomial((0,)))


@given(rationals, rationals, rationals)
def test_evaluation_is_a_ring_map(c0, c1, x):
    p = Polynomial((c0, c1))
    q = p * p - 3 * p
    assert q(x) == p(x) ** 2 - 3 * p(x)


@given(st.lists(rationals, min_size=1, max_size=3))
def test_roots_vanish(rs):
    p = Polynomial((1,))
    for r in rs:
        p = p * (a - r)
    found = {r.value for r in real_roots(p)}
    assert found == set(rs)
