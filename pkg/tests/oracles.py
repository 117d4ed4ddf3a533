"""Brute-force reference implementations, independent of the package's fast paths.

Polynomials here are plain ``{exponent tuple: coeff}`` dicts.
"""

from fractions import Fraction
from math import comb


def mul(a, b, p):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (out.get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


def naive_pow(f, n, p, nvars):
    """f^n by n-1 repeated multiplications."""
    out = {(0,) * nvars: 1}
    for _ in range(n):
        out = mul(out, f, p)
    return out


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_monomial_ideal(poly, gens):
    """Every term divisible by some generator monomial."""
    return all(any(divides(g, m) for g in gens) for m in poly)


def in_radical_of_monomial_ideal(poly, gens):
    squarefree = [tuple(min(a, 1) for a in g) for g in gens]
    return in_monomial_ideal(poly, squarefree)


def naive_nu(f, gens, p, e, nvars, limit=100000):
    """max n with f^n outside (g^q : g in gens) for monomial gens; 0 if f is inside."""
    q = p**e
    bracket = [tuple(a * q for a in g) for g in gens]
    power = {(0,) * nvars: 1}
    for n in range(1, limit):
        power = mul(power, f, p)
        if in_monomial_ideal(power, bracket):
            return n - 1
    raise RuntimeError("limit reached")


def binomial_coefficient_mod(n, k, p):
    return comb(n, k) % p


def smallest_denominator(lo, hi, lo_open=False, hi_open=False, max_den=10000):
    """Scan denominators upward; among fractions with that denominator return the smallest."""
    lo, hi = Fraction(lo), Fraction(hi)
    for d in range(1, max_den):
        n = (lo.numerator * d) // lo.denominator
        for a in range(max(n - 1, 0), n + 3 + int(hi - lo) * d + 1):
            x = Fraction(a, d)
            ok_lo = x > lo if lo_open else x >= lo
            ok_hi = x < hi if hi_open else x <= hi
            if ok_lo and ok_hi:
                return x
    raise RuntimeError("no fraction found")


def monomial_root(mon, q):
    return tuple(a // q for a in mon)
