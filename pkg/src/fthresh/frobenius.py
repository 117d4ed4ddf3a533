"""Frobenius powers, p^e-th roots, and splitting tests in F_p[x_1..x_n]."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import Poly, poly_pow
from .errors import InvariantViolation, NotAtOriginError, PreconditionError
from .groebner import Ideal

# re-assert I ⊆ (root)^[q] after every root computation
DEBUG_CHECKS = os.environ.get("FTHRESH_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class FrobeniusLevel:
    p: int
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError("e must be non-negative")

    @property
    def q(self) -> int:
        return self.p**self.e


def _level(ring, e) -> int:
    if isinstance(e, FrobeniusLevel):
        if e.p != ring.p:
            raise ValueError("level characteristic differs from ring")
        return e.e
    if e < 0:
        raise ValueError("e must be non-negative")
    return e


def bracket_power(J: Ideal, e) -> Ideal:
    """J^[q]: generated by the q-th powers of generators of J.

    Frobenius is a flat injective endomorphism preserving grevlex, so the
    Frobenius image of a reduced basis is again a reduced basis; when J's
    basis is already known the result's cache is filled for free.
    """
    e = _level(J.ring, e)
    if J._gb is not None:
        return Ideal._from_reduced(J.ring, [g.frobenius(e) for g in J.gb])
    return Ideal(J.ring, [g.frobenius(e) for g in J.generators])


def _root_generators(g: Poly, q: int) -> list[Poly]:
    # g = sum_mu h_mu^q * mu over basis monomials mu with exponents < q
    buckets: dict = {}
    for mon, c in g.terms.items():
        quo = tuple(a // q for a in mon)
        rem = tuple(a % q for a in mon)
        buckets.setdefault(rem, {})[quo] = c
    return [Poly(g.ring, b, _trusted=True) for b in buckets.values()]


def eth_root(I: Ideal, e, check: bool | None = None) -> Ideal:
    """I^[1/q]: the smallest ideal K with I ⊆ K^[q]."""
    ring = I.ring
    e = _level(ring, e)
    q = ring.p**e
    if e == 0:
        return I
    seen = {}
    for g in I.generators:
        for h in _root_generators(g, q):
            seen.setdefault(h.monic(), None)
    K = Ideal(ring, seen)
    if check if check is not None else DEBUG_CHECKS:
        if not I.issubset(bracket_power(K, e)):
            raise InvariantViolation(f"{I} not contained in ({K})^[{q}]")
    return K


def power_root(f: Poly, a: int, e) -> Ideal:
    """(f^a)^[1/q] without expanding f^a.

    With a = k*q + sum_i d_i p^i, uses (g^q I)^[1/q] = g * I^[1/q] to peel
    one base-p digit per step: K_0 = (1), K_{i+1} = (f^d_i * K_i)^[1/p],
    and the result is f^k * K_e.
    """
    ring = f.ring
    e = _level(ring, e)
    if a < 0:
        raise ValueError("a must be non-negative")
    p = ring.p
    q = p**e
    k, r = divmod(a, q)
    K = [ring.one()]
    powers: dict = {}
    for _ in range(e):
        r, d = divmod(r, p)
        if d not in powers:
            powers[d] = poly_pow(f, d)
        fd = powers[d]
        stage = Ideal(ring, [fd * g for g in K])
        K = list(eth_root(stage, 1).gb)
    fk = poly_pow(f, k)
    return Ideal(ring, [fk * g for g in K])


def _maximal_bracket(ring, e) -> Ideal:
    return bracket_power(Ideal.maximal(ring), e)


def fedder_fpure(f: Poly) -> bool:
    """F-purity of the hypersurface f at the origin: f^(p-1) not in m^[p]."""
    if f.is_zero:
        raise PreconditionError("f must be nonzero")
    if not f.vanishes_at_origin():
        raise NotAtOriginError(f"{f} does not vanish at the origin")
    ring = f.ring
    return not _maximal_bracket(ring, 1).contains(poly_pow(f, ring.p - 1))


def splitting_test(f: Poly, a: int, e) -> bool:
    """Whether 1 -> f^(a/p^e) splits, i.e. f^a not in m^[p^e]."""
    if a < 0:
        raise ValueError("a must be non-negative")
    ring = f.ring
    e = _level(ring, e)
    return not _maximal_bracket(ring, e).contains(poly_pow(f, a))
