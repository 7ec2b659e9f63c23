from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from harmonic_valence.dyadic import Dyadic, DyadicParseError, as_dyadic

dyadics = st.builds(Dyadic, st.integers(-(10**30), 10**30), st.integers(-200, 200))


def test_canonical_form():
    d = Dyadic(12, 0)
    assert (d.mantissa, d.exponent) == (3, 2)
    assert Dyadic(0, 17).exponent == 0
    assert Dyadic(4, -2) == Dyadic(1, 0) == 1


@pytest.mark.parametrize(
    "text, value",
    [("3*2^-2", Fraction(3, 4)), ("2^-40", Fraction(1, 2**40)), ("-2^3", -8), ("7", 7), ("0.375", Fraction(3, 8)),
     ("-5/8", Fraction(-5, 8))],
)
def test_parse(text, value):
    assert Dyadic.parse(text).to_fraction() == value


@pytest.mark.parametrize("text", ["", "abc", "1/3", "0.1", "2^x", "3*3^2"])
def test_parse_rejects(text):
    with pytest.raises(DyadicParseError):
        Dyadic.parse(text)


def test_from_float_exact():
    assert Dyadic.from_float(0.1).to_fraction() == Fraction(0.1)
    with pytest.raises(ValueError):
        Dyadic.from_float(float("nan"))


def test_from_fraction_rounding():
    third = Fraction(1, 3)
    lo = Dyadic.from_fraction(third, rounding="down", bits=20)
    hi = Dyadic.from_fraction(third, rounding="up", bits=20)
    assert lo.to_fraction() < third < hi.to_fraction()
    assert hi.to_fraction() - lo.to_fraction() <= Fraction(1, 2**18)
    with pytest.raises(ValueError):
        Dyadic.from_fraction(third)


def test_equality_with_float_and_int():
    assert Dyadic(1, -1) == 0.5
    assert Dyadic(3, 0) == 3
    assert Dyadic(1, -1) != 0.25


@given(dyadics, dyadics)
def test_arithmetic_matches_fraction(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb
    assert (a < b) == (fa < fb)
    assert (a == b) == (fa == fb)


@given(dyadics)
def test_str_parse_roundtrip(a):
    assert Dyadic.parse(str(a)) == a
    assert hash(Dyadic.parse(str(a))) == hash(a)


@given(dyadics, st.integers(0, 6))
def test_pow_floor_ceil(a, k):
    f = a.to_fraction()
    assert (a**k).to_fraction() == f**k
    assert a.floor() == f.__floor__()
    assert a.ceil() == f.__ceil__()
    assert a.sign() == (f > 0) - (f < 0)


def test_as_dyadic_and_immutability():
    assert as_dyadic(Fraction(5, 4)) == Dyadic(5, -2)
    with pytest.raises(AttributeError):
        Dyadic(1).mantissa = 2
