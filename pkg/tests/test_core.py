from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fthresh import FieldElement, Poly, PrimeField, make_ring, poly_pow, prational_cmp
from fthresh.core import ExponentOverflowError, format_rational, grevlex_key

from conftest import polys
from oracles import naive_pow

R7 = make_ring(7, "x,y")
R3 = make_ring(3, "x,y,z")


def test_prime_field_rejects_composites_and_large_p():
    for bad in (0, 1, 4, 9, 15, 2**31 + 11, 2**32 + 15):
        with pytest.raises(ValueError):
            PrimeField(bad)
    assert PrimeField(2**31 - 1).p == 2**31 - 1


def test_field_element_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (a / b).value == 2
    assert (a**-1).value == 5
    assert (-a).value == 4
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    assert isinstance(a + 1, FieldElement)


@pytest.mark.parametrize("a,b,expected", [
    (Fraction(14, 49), Fraction(2, 7), 0),
    (Fraction(5, 7), Fraction(6, 7), -1),
    (Fraction(5, 6), Fraction(41, 49), -1),
])
def test_prational_cmp_examples(a, b, expected):
    assert prational_cmp(a, b) == expected
    assert prational_cmp(b, a) == -expected


@settings(max_examples=300)
@given(st.integers(-2**30, 2**30), st.integers(1, 2**30 - 1), st.integers(-2**30, 2**30), st.integers(1, 2**30 - 1))
def test_prational_order_matches_floats(a, b, c, d):
    x, y = Fraction(a, b), Fraction(c, d)
    cmp = prational_cmp(x, y)
    if abs(a / b - c / d) > 1e-12:
        assert cmp == (1 if a / b > c / d else -1)
    assert cmp == -prational_cmp(y, x)
    assert (cmp == 0) == (x == y)


def test_format_rational():
    assert format_rational(Fraction(5, 7)) == "5/7"
    assert format_rational(1) == "1/1"


def test_parse_examples():
    assert R7.parse("x^2+y^3").terms == {(2, 0): 1, (0, 3): 1}
    assert R7.parse("7*x+1") == R7.one()
    R2 = make_ring(2, "x,y")
    assert R2.parse("(x+y)^2") == R2.parse("x^2+y^2")


def test_poly_pow_examples():
    x = R7.var("x")
    assert poly_pow(x, 3) == R7.parse("x^3")
    R5 = make_ring(5, "x,y")
    assert poly_pow(R5.parse("x+y"), 5) == R5.parse("x^5+y^5")
    f = R7.parse("x^2+y^3")
    f5 = poly_pow(f, 5)
    assert f5.terms[(6, 6)] == 3
    assert dict(f5.terms) == naive_pow(dict(f.terms), 5, 7, 2)
    assert poly_pow(f, 0) == R7.one()


@pytest.mark.parametrize("text,p,n", [
    ("x^2+y^3", 7, 23), ("x+y+1", 3, 40), ("x*y+y^2+2", 5, 31), ("x^3+y^3", 2, 19), ("3*x+4*y^2", 7, 50),
])
def test_poly_pow_matches_repeated_multiplication(text, p, n):
    R = make_ring(p, "x,y")
    f = R.parse(text)
    assert dict(poly_pow(f, n).terms) == naive_pow(dict(f.terms), n, p, 2)


def test_kernel_sized_product_matches_dict_product():
    f = poly_pow(R7.parse("x+y+1"), 30)
    g = poly_pow(R7.parse("x^2+3*y+2"), 25)
    from fthresh.core import _poly_mul_dict
    assert f * g == _poly_mul_dict(f, g)


@settings(max_examples=1000, deadline=None)
@given(polys(R3), polys(R3), polys(R3))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f + g == g + f
    assert f - f == R3.zero()


@settings(max_examples=200, deadline=None)
@given(polys(R7), polys(R7))
def test_frobenius_is_additive(f, g):
    assert (f + g) ** 7 == f**7 + g**7
    assert (f + g).frobenius(1) == f**7 + g**7


@settings(max_examples=300, deadline=None)
@given(polys(R3, max_terms=6, max_deg=6))
def test_parse_print_roundtrip(f):
    assert R3.parse(str(f)) == f


def test_zero_and_equality():
    assert R7.zero().is_zero
    assert str(R7.zero()) == "0"
    assert R7.parse("x - x") == R7.zero()
    assert R7.parse("x") == R7.var("x")
    assert hash(R7.parse("x+y")) == hash(R7.parse("y+x"))


def test_terms_iterate_in_grevlex_descending():
    R = make_ring(5, "x,y,z")
    f = R.parse("x*z + y^2 + x + z^3 + 1")
    mons = [m for m, _ in f]
    assert mons == sorted(mons, key=grevlex_key, reverse=True)
    # grevlex: y^2 > x*z in x > y > z
    assert mons.index((0, 2, 0)) < mons.index((1, 0, 1))
    assert f.leading_monomial() == (0, 0, 3)


def test_value_semantics():
    f = R7.parse("x+y")
    with pytest.raises(TypeError):
        f.terms[(1, 0)] = 3
    g = f * 1
    assert g == f


def test_exponent_overflow_is_an_error():
    x = R7.var("x")
    with pytest.raises(ExponentOverflowError):
        poly_pow(x, 2**31)
    with pytest.raises(ExponentOverflowError):
        Poly(R7, {(2**31, 0): 1})


def test_ring_mismatch():
    other = make_ring(5, "x,y")
    with pytest.raises(ValueError):
        R7.var("x") + other.var("x")
