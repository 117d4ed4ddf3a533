from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fthresh.rationals import overlaps, simplest_in

from oracles import smallest_denominator


def test_examples():
    assert simplest_in(Fraction(5, 7), Fraction(6, 7)) == Fraction(3, 4)
    assert simplest_in(Fraction(8, 9), 1) == 1
    assert simplest_in(Fraction(40, 49), Fraction(41, 49), lo_open=True) == Fraction(5, 6)
    assert simplest_in(Fraction(1, 3), Fraction(1, 2), hi_open=True) == Fraction(1, 3)
    assert simplest_in(Fraction(1, 3), Fraction(1, 2), lo_open=True, hi_open=True) == Fraction(2, 5)
    assert simplest_in(Fraction(7, 2), None) == 4
    assert simplest_in(0, Fraction(1, 10), lo_open=True) == Fraction(1, 10)


def test_bad_intervals():
    with pytest.raises(ValueError):
        simplest_in(1, Fraction(1, 2))
    with pytest.raises(ValueError):
        simplest_in(1, 1, lo_open=True)
    with pytest.raises(ValueError):
        simplest_in(-1, 1)


fracs = st.builds(Fraction, st.integers(0, 400), st.integers(1, 60))


@settings(max_examples=500, deadline=None)
@given(fracs, fracs, st.booleans(), st.booleans())
def test_matches_denominator_scan(a, b, lo_open, hi_open):
    lo, hi = min(a, b), max(a, b)
    if lo == hi and (lo_open or hi_open):
        return
    got = simplest_in(lo, hi, lo_open=lo_open, hi_open=hi_open)
    assert got == smallest_denominator(lo, hi, lo_open, hi_open)


def test_overlaps():
    assert overlaps((Fraction(5, 7), Fraction(6, 7)), (Fraction(40, 49), Fraction(41, 49)))
    assert not overlaps((0, Fraction(1, 2)), (Fraction(1, 2), 1))
    assert overlaps((Fraction(1, 2), 1), (0, Fraction(1, 2)))
    assert not overlaps((2, 3), (0, 1))
