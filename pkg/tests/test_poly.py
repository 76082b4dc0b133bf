from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genusone.exactalg import Monomial, PolyMatrix, Polynomial, monomial_gcd, monomials_of_degree

NAMES = ("x", "y", "z")

monomials = st.dictionaries(st.sampled_from(NAMES), st.integers(0, 3)).map(Monomial)
polys = st.dictionaries(monomials, st.integers(-5, 5), max_size=4).map(Polynomial)
points = st.fixed_dictionaries({n: st.integers(-4, 4) for n in NAMES})


def test_monomial_basics():
    m = Monomial({"t1": 2, "t2": 1})
    assert str(m) == "t1^2*t2"
    assert m.degree == 3
    assert m["t3"] == 0
    assert Monomial({"t1": 0}).is_one()
    assert m / Monomial.var("t1") == Monomial({"t1": 1, "t2": 1})


def test_negative_exponent_needs_laurent():
    with pytest.raises(ValueError):
        Monomial({"u0": -1})
    assert Monomial({"u0": -1}, laurent=True) * Monomial.var("u0") == Monomial.one()


def test_division_requires_divisibility():
    with pytest.raises(ValueError):
        Monomial.var("x") / Monomial.var("y")


def test_lcm_gcd():
    a, b = Monomial({"ta": 1, "tb": 1}), Monomial({"ta": 1, "tc": 1})
    assert a.lcm(b) == Monomial({"ta": 1, "tb": 1, "tc": 1})
    assert a.gcd(b) == Monomial.var("ta")
    assert monomial_gcd([a, b, Monomial({"ta": 2})]) == Monomial.var("ta")


@pytest.mark.parametrize("n, d, count", [(2, 3, 4), (3, 2, 6), (4, 0, 1), (3, -1, 0)])
def test_monomials_of_degree_count(n, d, count):
    assert len(list(monomials_of_degree(NAMES[:n] if n <= 3 else ("a", "b", "c", "d"), d))) == count


def test_polynomial_arithmetic():
    x, y = Polynomial.var("x"), Polynomial.var("y")
    p = (x + y) ** 2
    assert p.coefficient(Monomial({"x": 1, "y": 1})) == 2
    assert (p - x * x - y * y - 2 * x * y).is_zero()
    assert str(x - y) == "x - y"


def test_translate_and_truncate():
    x = Polynomial.var("x")
    p = x**3
    shifted = p.translate({"x": 2})
    assert shifted.evaluate({"x": 0}) == 8
    assert shifted.truncate(2) == 8 + 12 * x
    assert p.truncate(3).is_zero()


def test_as_monomial():
    assert Polynomial.var("x").as_monomial() == Monomial.var("x")
    assert (2 * Polynomial.var("x")).as_monomial() is None


def test_polymatrix_product():
    x = Polynomial.var("x")
    a = PolyMatrix([[x, 1], [0, x]])
    assert (a @ a).evaluate({"x": 2}) == [[4, 4], [0, 4]]


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@given(polys, points, points)
def test_translate_matches_evaluation(p, shift, pt):
    moved = p.translate(shift)
    assert moved.evaluate(pt) == p.evaluate({n: pt[n] + shift[n] for n in NAMES})


@given(monomials, monomials)
def test_lcm_gcd_product(a, b):
    assert a.lcm(b) * a.gcd(b) == a * b


def test_scalars_are_exact():
    assert Polynomial.constant(Fraction(1, 3)) * 3 == Polynomial.constant(1)
