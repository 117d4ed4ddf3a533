"""Interval helpers over exact rationals."""

from __future__ import annotations

from fractions import Fraction
from math import floor


def simplest_in(lo, hi, *, lo_open: bool = False, hi_open: bool = False) -> Fraction:
    """Smallest-denominator rational in the interval between ``lo`` and ``hi``.

    Walks the Stern-Brocot tree in continued-fraction sized strides. Among
    candidates with the minimal denominator the smallest one is returned.
    Requires 0 <= lo <= hi (``hi=None`` means +infinity).
    """
    lo = Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo < 0:
        raise ValueError("interval must be non-negative")
    if hi is not None and (hi < lo or (hi == lo and (lo_open or hi_open))):
        raise ValueError(f"empty interval [{lo}, {hi}]")
    n = floor(lo)
    c = n if (lo == n and not lo_open) else n + 1
    if hi is None or c < hi or (c == hi and not hi_open):
        return Fraction(c)
    # no integer inside: the interval lies within (n, n+1); recurse on reciprocals
    frac_lo = lo - n
    frac_hi = hi - n
    inner = simplest_in(
        1 / frac_hi,
        None if frac_lo == 0 else 1 / frac_lo,
        lo_open=hi_open,
        hi_open=lo_open,
    )
    return n + 1 / inner


def overlaps(closed: tuple, half_open: tuple) -> bool:
    """Does closed [a, b] meet half-open (c, d]?"""
    a, b = closed
    c, d = half_open
    return a <= d and b > c
