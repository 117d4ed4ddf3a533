"""Ideals in F_p[x_1..x_n]: reduced grevlex Groebner bases and decision procedures."""

from __future__ import annotations

import heapq
from typing import Iterable

import numpy as np

from . import _kernels
from .core import Poly, PolyRing, divides, grevlex_key, mono_div, mono_lcm, mono_mul


def _heap_key(m):
    # min-heap on this key pops the grevlex-largest monomial first
    return (-sum(m),) + tuple(reversed(m))


class _Basis:
    """Monic basis elements with their leading monomials, for reduction."""

    def __init__(self):
        self.lms: list[tuple] = []
        self.polys: list[dict] = []

    def add(self, lm, terms):
        self.lms.append(lm)
        self.polys.append(terms)

    def find_divisor(self, mon):
        for i, lm in enumerate(self.lms):
            if divides(lm, mon):
                return i
        return -1


def _monic_terms(terms: dict, p: int):
    lm = max(terms, key=grevlex_key)
    inv = pow(terms[lm], -1, p)
    if inv == 1:
        return lm, dict(terms)
    return lm, {m: c * inv % p for m, c in terms.items()}


def _reduce(terms: dict, basis: _Basis, p: int, skip: int = -1) -> dict:
    """Full reduction of ``terms`` by monic ``basis``; returns the remainder dict."""
    work = dict(terms)
    heap = [_heap_key(m) + (m,) for m in work]
    heapq.heapify(heap)
    rem = {}
    while heap:
        mon = heapq.heappop(heap)[-1]
        c = work.pop(mon, 0)
        if not c:
            continue
        div = -1
        for i, lm in enumerate(basis.lms):
            if i != skip and divides(lm, mon):
                div = i
                break
        if div < 0:
            rem[mon] = c
            continue
        shift = mono_div(mon, basis.lms[div])
        for m, v in basis.polys[div].items():
            if m == basis.lms[div]:
                continue
            t = mono_mul(m, shift)
            old = work.get(t)
            new = ((old or 0) - c * v) % p
            if new:
                work[t] = new
                if old is None:
                    heapq.heappush(heap, _heap_key(t) + (t,))
            elif old is not None:
                del work[t]
    return rem


def _s_poly(f: dict, lf, g: dict, lg, p: int) -> dict:
    lcm = mono_lcm(lf, lg)
    sf = mono_div(lcm, lf)
    sg = mono_div(lcm, lg)
    out = {}
    for m, c in f.items():
        out[mono_mul(m, sf)] = c
    for m, c in g.items():
        t = mono_mul(m, sg)
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _is_constant(mon) -> bool:
    return not any(mon)


def buchberger(polys: Iterable[dict], nvars: int, p: int) -> list[dict]:
    """Reduced Groebner basis (list of monic term dicts, ascending leading monomial).

    Normal selection strategy (smallest lcm degree first, ties broken by
    pair index), Buchberger's coprime criterion, and a short-circuit to the
    unit ideal as soon as a constant shows up.
    """
    one = (0,) * nvars
    basis = _Basis()
    seen = set()
    for terms in polys:
        if not terms:
            continue
        lm, t = _monic_terms(terms, p)
        if _is_constant(lm):
            return [{one: 1}]
        key = frozenset(t.items())
        if key in seen:
            continue
        seen.add(key)
        basis.add(lm, t)

    pairs: list = []

    def push_pairs(j):
        for i in range(j):
            a, b = basis.lms[i], basis.lms[j]
            if all(x == 0 or y == 0 for x, y in zip(a, b)):
                continue
            heapq.heappush(pairs, (sum(mono_lcm(a, b)), i, j))

    for j in range(len(basis.lms)):
        push_pairs(j)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        s = _s_poly(basis.polys[i], basis.lms[i], basis.polys[j], basis.lms[j], p)
        if not s:
            continue
        r = _reduce(s, basis, p)
        if not r:
            continue
        lm, r = _monic_terms(r, p)
        if _is_constant(lm):
            return [{one: 1}]
        basis.add(lm, r)
        push_pairs(len(basis.lms) - 1)

    return _interreduce(basis, p)


def _interreduce(basis: _Basis, p: int) -> list[dict]:
    # drop elements whose leading monomial is divisible by another's
    keep = []
    lms = basis.lms
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if j == i or not divides(other, lm):
                continue
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = _Basis()
    for i in keep:
        minimal.add(lms[i], basis.polys[i])
    out = []
    for k in range(len(minimal.lms)):
        lm = minimal.lms[k]
        tail = {m: c for m, c in minimal.polys[k].items() if m != lm}
        red = _reduce(tail, minimal, p, skip=k)
        red[lm] = 1
        out.append(red)
    out.sort(key=lambda t: grevlex_key(max(t, key=grevlex_key)))
    return out


class Ideal:
    """Finitely generated ideal with a lazily computed reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable[Poly] = ()):
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.constant(g)
            if g.ring != ring:
                raise ValueError(f"generator {g} not in {ring}")
            if not g.is_zero:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: tuple | None = None
        self._mono_exps = None

    @classmethod
    def maximal(cls, ring: PolyRing) -> Ideal:
        return cls(ring, ring.gens())

    @classmethod
    def _from_reduced(cls, ring: PolyRing, basis: Iterable[Poly]) -> Ideal:
        I = cls(ring, basis)
        I._gb = I.generators
        return I

    # -- basis --------------------------------------------------------------

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial for g in self.generators)

    @property
    def gb(self) -> tuple:
        if self._gb is None:
            self._gb = self._compute_gb()
        return self._gb

    def _compute_gb(self) -> tuple:
        ring = self.ring
        if not self.generators:
            return ()
        if self.is_monomial:
            mons = sorted({next(iter(g.terms)) for g in self.generators}, key=grevlex_key)
            minimal = [m for m in mons if not any(o != m and divides(o, m) for o in mons)]
            return tuple(ring.monomial(m) for m in minimal)
        dicts = buchberger((dict(g.terms) for g in self.generators), ring.nvars, ring.p)
        return tuple(Poly(ring, d, _trusted=True) for d in dicts)

    def groebner_basis(self) -> Ideal:
        """A copy generated by its reduced basis (cache filled)."""
        return Ideal._from_reduced(self.ring, self.gb)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant

    def _monomial_gb_exps(self):
        """Exponent matrix of the basis when it consists of monomials, else None."""
        if self._mono_exps is None:
            gb = self.gb
            if all(g.is_monomial for g in gb):
                arr = np.array([next(iter(g.terms)) for g in gb], dtype=np.int64)
                self._mono_exps = arr.reshape(len(gb), self.ring.nvars)
            else:
                self._mono_exps = False
        return None if self._mono_exps is False else self._mono_exps

    # -- decisions ----------------------------------------------------------

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        gens = self._monomial_gb_exps()
        if gens is not None:
            if f.is_zero:
                return f
            exps = f.exponent_array()
            mask = _kernels.divisible_mask(exps, gens)
            if mask.all():
                return self.ring.zero()
            keep = [m for m, hit in zip(f.terms, mask.tolist()) if not hit]
            return Poly(self.ring, {m: f.terms[m] for m in keep}, _trusted=True)
        basis = _Basis()
        for g in self.gb:
            basis.add(g.leading_monomial(), dict(g.terms))
        return Poly(self.ring, _reduce(dict(f.terms), basis, self.ring.p), _trusted=True)

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        if f.is_zero:
            return True
        gens = self._monomial_gb_exps()
        if gens is not None:
            return bool(_kernels.all_divisible(f.exponent_array(), gens))
        if self.is_unit:
            return True
        return self.normal_form(f).is_zero

    def __contains__(self, f: Poly) -> bool:
        return self.contains(f)

    def issubset(self, other: Ideal) -> bool:
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return all(other.contains(g) for g in self.generators)

    __le__ = issubset

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, self.gb))

    # -- constructions ------------------------------------------------------

    def __add__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])

    def __pow__(self, r: int) -> Ideal:
        return ideal_power(self, r)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self} in {self.ring}"


def groebner_basis(I: Ideal) -> Ideal:
    return I.groebner_basis()


def normal_form(f: Poly, I: Ideal) -> Poly:
    return I.normal_form(f)


def contains(f: Poly, I: Ideal) -> bool:
    return I.contains(f)


def ideal_leq(I: Ideal, J: Ideal) -> bool:
    return I.issubset(J)


def ideal_eq(I: Ideal, J: Ideal) -> bool:
    return I == J


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def ideal_power(I: Ideal, r: int) -> Ideal:
    """I^r generated by all r-fold products of generators (deduplicated)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    result = I
    for _ in range(r - 1):
        prods = {}
        for a in result.generators:
            for b in I.generators:
                g = a * b
                prods.setdefault(g, None)
        result = Ideal(I.ring, prods)
    return result


elementwise_power = ideal_power


def _fresh_name(ring: PolyRing) -> str:
    name = "_t"
    while name in ring.variables:
        name += "_"
    return name


def radical_member(f: Poly, J: Ideal) -> bool:
    """f in sqrt(J), decided by 1 in (J, 1 - t*f) with a fresh variable t."""
    ring = J.ring
    if f.ring != ring:
        raise ValueError("ring mismatch")
    if f.is_zero:
        return True
    big = ring.extend(_fresh_name(ring))

    def lift(g: Poly) -> Poly:
        return Poly(big, {m + (0,): c for m, c in g.terms.items()}, _trusted=True)

    t = big.var(big.variables[-1])
    return Ideal(big, [lift(g) for g in J.generators] + [big.one() - t * lift(f)]).is_unit
