"""Prime fields, exact rationals and sparse multivariate polynomials over F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _kernels

# 32-bit exponents; anything larger is a hard error, never wraparound
MAX_EXPONENT = 2**31 - 1
MAX_PRIME = 2**31

# below this many term pairs the dict loop beats packing arrays for the kernel
_KERNEL_MIN_PAIRS = 256
_KEY_LIMIT = 2**62

Monomial = tuple  # tuple[int, ...]

#: Exponents a/p^e and parameters t are plain ``fractions.Fraction`` values.
PRational = Fraction


class ExponentOverflowError(OverflowError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13):
        if n % d == 0:
            return n == d
    d = 17
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prational_cmp(a: Fraction, b: Fraction) -> int:
    """Three-way comparison by cross-multiplication: -1, 0 or 1."""
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def format_rational(x: Fraction) -> str:
    """Serialize as ``"a/b"``; integers keep an explicit ``/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("characteristic must be an int")
        if self.p >= MAX_PRIME:
            raise ValueError(f"p must be below 2^31, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError("unreduced field element")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self.field(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self.field(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self.field(v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else self.field(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.field(pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * self.field(v).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return self.field(pow(self.value, n, self.field.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def grevlex_key(m: Monomial) -> tuple:
    """Sort key: ascending key order is ascending grevlex order."""
    return (sum(m),) + tuple(-a for a in reversed(m))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """F_p[x_1, ..., x_n] with a fixed variable order (grevlex)."""

    field: PrimeField
    variables: tuple

    def __post_init__(self):
        if not isinstance(self.field, PrimeField):
            object.__setattr__(self, "field", PrimeField(self.field))
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for name in names:
            if not (name.isidentifier() and name.isascii()):
                raise ValueError(f"bad variable name {name!r}")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c: int) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> Poly:
        return Poly(self, {tuple(exps): coeff})

    def var(self, name: str) -> Poly:
        i = self.variables.index(name)
        return self.monomial(tuple(int(j == i) for j in range(self.nvars)))

    def gens(self) -> list[Poly]:
        return [self.var(v) for v in self.variables]

    def parse(self, text: str) -> Poly:
        from .parser import parse_poly

        return parse_poly(text, self)

    def extend(self, name: str) -> PolyRing:
        return PolyRing(self.field, self.variables + (name,))

    def __str__(self):
        return f"F_{self.p}[{','.join(self.variables)}]"


def make_ring(p: int, variables) -> PolyRing:
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    return PolyRing(PrimeField(p), tuple(variables))


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to residues in [1, p)."""

    __slots__ = ("ring", "_terms", "_arrays", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int], *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for mon, c in terms.items():
                mon = tuple(int(a) for a in mon)
                if len(mon) != n:
                    raise ValueError(f"monomial {mon} has wrong length for {ring}")
                if any(a < 0 for a in mon):
                    raise ValueError("negative exponent")
                if any(a > MAX_EXPONENT for a in mon):
                    raise ExponentOverflowError(f"exponent exceeds 2^31-1 in {mon}")
                c = (clean.get(mon, 0) + int(c)) % p
                if c:
                    clean[mon] = c
                else:
                    clean.pop(mon, None)
            self._terms = clean
        self._arrays = None
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in descending grevlex order."""
        for mon in sorted(self._terms, key=grevlex_key, reverse=True):
            yield mon, self._terms[mon]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def max_exponents(self) -> tuple:
        n = self.ring.nvars
        if not self._terms:
            return (0,) * n
        return tuple(max(m[i] for m in self._terms) for i in range(n))

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self) -> int:
        return self._terms[self.leading_monomial()]

    def coefficient(self, mon: Iterable[int]) -> FieldElement:
        return self.ring.field(self._terms.get(tuple(mon), 0))

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def vanishes_at_origin(self) -> bool:
        return self.constant_term() == 0

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Poly):
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            return self.ring.constant(other.value)
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._terms)
        for mon, c in other._terms.items():
            s = (out.get(mon, 0) + c) % p
            if s:
                out[mon] = s
            else:
                out.pop(mon, None)
        return Poly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: p - c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> Poly:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c % p for m, v in self._terms.items()}, _trusted=True)

    def mul_term(self, mon: Monomial, c: int = 1) -> Poly:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        out = {}
        for m, v in self._terms.items():
            prod = mono_mul(m, mon)
            if max(prod, default=0) > MAX_EXPONENT:
                raise ExponentOverflowError("exponent exceeds 2^31-1")
            out[prod] = v * c % p
        return Poly(self.ring, out, _trusted=True)

    def monic(self) -> Poly:
        if self.is_zero:
            return self
        lc = self.leading_coefficient()
        return self.scale(pow(lc, -1, self.ring.p))

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return poly_pow(self, n)

    def frobenius(self, e: int = 1) -> Poly:
        """f^(p^e): every exponent scales by q, coefficients are fixed by Frobenius on F_p."""
        q = self.ring.p ** e
        out = {}
        for m, c in self._terms.items():
            scaled = tuple(a * q for a in m)
            if max(scaled, default=0) > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent exceeds 2^31-1 in Frobenius power q={q}")
            out[scaled] = c
        return Poly(self.ring, out, _trusted=True)

    # -- kernel bridge ------------------------------------------------------

    def exponent_array(self) -> np.ndarray:
        return self._packed()[0]

    def _packed(self):
        if self._arrays is None:
            n = self.ring.nvars
            exps = np.array(list(self._terms.keys()), dtype=np.int64).reshape(len(self._terms), n)
            coefs = np.fromiter(self._terms.values(), dtype=np.int64, count=len(self._terms))
            self._arrays = (exps, coefs)
        return self._arrays

    # -- equality / printing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mon, c in self:
            factors = []
            for name, a in zip(self.ring.variables, mon):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return "+".join(parts)

    def __repr__(self):
        return f"Poly({self}, ring={self.ring})"


def _poly_mul(a: Poly, b: Poly) -> Poly:
    ring = a.ring
    if a.is_zero or b.is_zero:
        return ring.zero()
    if len(a) * len(b) < _KERNEL_MIN_PAIRS:
        return _poly_mul_dict(a, b)
    radices = [x + y + 1 for x, y in zip(a.max_exponents(), b.max_exponents())]
    if max(radices) - 1 > MAX_EXPONENT:
        raise ExponentOverflowError("product exponent exceeds 2^31-1")
    span = 1
    for r in radices:
        span *= r
    if span >= _KEY_LIMIT:
        return _poly_mul_dict(a, b)
    strides = np.ones(len(radices), dtype=np.int64)
    for i in range(len(radices) - 2, -1, -1):
        strides[i] = strides[i + 1] * radices[i + 1]
    ea, ca = a._packed()
    eb, cb = b._packed()
    keys, coefs = _kernels.mul(ea @ strides, ca, eb @ strides, cb, ring.p)
    exps = (keys[:, None] // strides[None, :]) % np.asarray(radices, dtype=np.int64)[None, :]
    terms = dict(zip(map(tuple, exps.tolist()), coefs.tolist()))
    return Poly(ring, terms, _trusted=True)


def _poly_mul_dict(a: Poly, b: Poly) -> Poly:
    p = a.ring.p
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            mon = tuple(x + y for x, y in zip(ma, mb))
            out[mon] = (out.get(mon, 0) + ca * cb) % p
    for mon in [m for m, c in out.items() if c == 0]:
        del out[mon]
    if out and max(max(m, default=0) for m in out) > MAX_EXPONENT:
        raise ExponentOverflowError("product exponent exceeds 2^31-1")
    return Poly(a.ring, out, _trusted=True)


def _binary_pow(f: Poly, n: int) -> Poly:
    result = f.ring.one()
    base = f
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def poly_pow(f: Poly, n: int) -> Poly:
    """f^n; f^0 = 1.

    Writes n in base p and uses (f^(p^i))^d with f^(p^i) obtained for free
    by scaling exponents, so only digit powers d < p need binary
    exponentiation.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("exponent must be a non-negative int")
    ring = f.ring
    if n == 0:
        return ring.one()
    if f.is_zero:
        return f
    if f.is_monomial:
        (mon, c), = f._terms.items()
        exps = tuple(a * n for a in mon)
        if max(exps, default=0) > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent exceeds 2^31-1 in power {n}")
        return Poly(ring, {exps: pow(c, n, ring.p)}, _trusted=True)
    if max(f.max_exponents()) * n > MAX_EXPONENT:
        raise ExponentOverflowError(f"exponent exceeds 2^31-1 in power {n}")
    p = ring.p
    factors = []
    base = f
    while n:
        n, d = divmod(n, p)
        if d:
            factors.append(_binary_pow(base, d))
        if n:
            base = base.frobenius(1)
    factors.sort(key=len)
    result = factors[0]
    for g in factors[1:]:
        result = result * g
    return result
