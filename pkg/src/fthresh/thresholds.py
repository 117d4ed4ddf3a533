"""nu_e^J(f), nested interval estimates of the F-threshold c^J(f), and the F-pure threshold."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Poly, poly_pow
from .errors import (
    ContainmentError,
    DegreeBudgetExceeded,
    InvariantViolation,
    NotAtOriginError,
    NotInRadicalError,
    PreconditionError,
)
from .frobenius import bracket_power, power_root
from .groebner import Ideal, radical_member
from .rationals import simplest_in

DEFAULT_DEGREE_BUDGET = 10**6


@dataclass(frozen=True)
class ThresholdEstimate:
    """c^J(f) lies in [lower, upper] = [nu/p^e, (nu+1)/p^e]."""

    lower: Fraction
    upper: Fraction
    level: int
    nu: int
    # nu = 0 because f already lies in J^[q] (max over an empty set)
    flagged: bool = False
    history: tuple = field(default=(), compare=False)
    guess: Fraction | None = None
    simplest: Fraction | None = None

    def contains(self, t) -> bool:
        return self.lower <= Fraction(t) <= self.upper


class _Membership:
    """Monotone predicate n -> [f^n in J^[q]] with a memo."""

    def __init__(self, f: Poly, J: Ideal, e: int, method: str, budget: int):
        self.f, self.J, self.e = f, J, e
        self.budget = budget
        if method == "auto":
            method = "power" if J.is_monomial else "root"
        if method not in ("power", "root"):
            raise ValueError(f"unknown membership method {method!r}")
        self.method = method
        self.memo: dict = {}
        if method == "power":
            self.bracket = bracket_power(J, e)
        self.fdeg = max(f.degree(), 1)

    def __call__(self, n: int) -> bool:
        hit = self.memo.get(n)
        if hit is None:
            if n * self.fdeg > self.budget:
                raise DegreeBudgetExceeded(
                    f"search for nu reached n={n} (degree {n * self.fdeg}) past the budget "
                    f"{self.budget}; f is probably not in sqrt(J)"
                )
            if self.method == "power":
                g = poly_pow(self.f, n)
                if len(g) > self.budget:
                    raise DegreeBudgetExceeded(f"f^{n} has {len(g)} terms, budget {self.budget}")
                hit = self.bracket.contains(g)
            else:
                hit = power_root(self.f, n, self.e).issubset(self.J)
            self.memo[n] = hit
        return hit


def _check_radical(f: Poly, J: Ideal):
    if not radical_member(f, J):
        raise NotInRadicalError(f"{f} is not in the radical of {J}; nu_e would be unbounded")


def nu(
    f: Poly,
    J: Ideal,
    e: int,
    *,
    start: int | None = None,
    method: str = "auto",
    degree_budget: int = DEFAULT_DEGREE_BUDGET,
    check_radical: bool = True,
) -> int:
    """nu_e^J(f) = max{n : f^n not in J^[p^e]}, or 0 when f itself lies in J^[p^e].

    Finds the first member by galloping from ``start`` (default 1) and then
    bisecting, so only O(log nu) membership tests are made.
    """
    if f.ring != J.ring:
        raise ValueError("ring mismatch")
    if e < 0:
        raise ValueError("e must be non-negative")
    if check_radical:
        _check_radical(f, J)
    member = _Membership(f, J, e, method, degree_budget)
    if member(1):
        return 0
    lo, hi = 1, None  # lo: known non-member, hi: known member
    n = max(start or 1, 1)
    if n > 1:
        if member(n):
            hi = n
            step = 1
            while True:
                cand = max(hi - step, lo)
                if cand == lo:
                    break
                if member(cand):
                    hi = cand
                    step *= 2
                else:
                    lo = cand
                    break
        else:
            lo = n
    if hi is None:
        step = max(lo, 1)
        while True:
            cand = lo + step
            if member(cand):
                hi = cand
                break
            lo = cand
            step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(mid):
            hi = mid
        else:
            lo = mid
    return lo


def _estimate(nu_e: int, e: int, p: int, flagged: bool, history) -> ThresholdEstimate:
    q = p**e
    return ThresholdEstimate(
        lower=Fraction(nu_e, q),
        upper=Fraction(nu_e + 1, q),
        level=e,
        nu=nu_e,
        flagged=flagged,
        history=tuple(history),
    )


def threshold_interval(
    f: Poly,
    J: Ideal,
    max_e: int,
    *,
    method: str = "auto",
    degree_budget: int = DEFAULT_DEGREE_BUDGET,
) -> ThresholdEstimate:
    """Estimate of c^J(f) at level ``max_e``, checking nesting against every lower level."""
    if max_e < 1:
        raise ValueError("max_e must be >= 1")
    _check_radical(f, J)
    p = f.ring.p
    history = []
    prev = None
    for e in range(1, max_e + 1):
        # seed the gallop at p*nu_{e-1}; the search itself is still exhaustive
        start = p * prev if prev else None
        v = nu(f, J, e, start=start, method=method, degree_budget=degree_budget, check_radical=False)
        if prev is not None:
            if not 0 <= v - p * prev <= p - 1:
                raise InvariantViolation(f"nu_{e}={v} outside [p*nu_{e - 1}, p*nu_{e - 1}+p-1] (nu_{e - 1}={prev})")
            lo_prev, lo = Fraction(prev, p ** (e - 1)), Fraction(v, p**e)
            hi_prev, hi = Fraction(prev + 1, p ** (e - 1)), Fraction(v + 1, p**e)
            if not (lo_prev <= lo < hi <= hi_prev):
                raise InvariantViolation(f"intervals not nested at level {e}")
        history.append((e, v))
        prev = v
    # nu = 0 exactly when f^1 already lies in J^[q]
    return _estimate(prev, max_e, p, prev == 0, history)


def periodic_guess(est: ThresholdEstimate, p: int) -> Fraction:
    """Candidate exact value for the threshold; a heuristic, never used internally.

    Assumes the base-p expansion of the threshold repeats with period equal
    to the computed level, which gives nu/(q-1). When that falls outside the
    interval, the smallest-denominator rational in the interval is used.
    """
    q = p**est.level
    cand = Fraction(est.nu, q - 1)
    if est.contains(cand):
        return cand
    return simplest_in(est.lower, est.upper)


def fpt(f: Poly, max_e: int, **kwargs) -> ThresholdEstimate:
    """F-pure threshold estimate: the threshold with respect to the maximal ideal."""
    if f.is_zero:
        raise PreconditionError("f must be nonzero")
    if not f.vanishes_at_origin():
        raise NotAtOriginError(f"{f} does not vanish at the origin")
    est = threshold_interval(f, Ideal.maximal(f.ring), max_e, **kwargs)
    return ThresholdEstimate(
        lower=est.lower,
        upper=est.upper,
        level=est.level,
        nu=est.nu,
        flagged=est.flagged,
        history=est.history,
        guess=periodic_guess(est, f.ring.p),
        simplest=simplest_in(est.lower, est.upper),
    )


def scaling_check(f: Poly, J: Ideal, r: int, e: int, **kwargs) -> bool:
    """nu_e^J(f^r) == floor(nu_e^J(f) / r)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return nu(poly_pow(f, r), J, e, **kwargs) == nu(f, J, e, **kwargs) // r


def monotonicity_check(f: Poly, J: Ideal, I: Ideal, e: int, **kwargs) -> bool:
    """For J ⊆ I: nu_e^I(f) <= nu_e^J(f)."""
    if not J.issubset(I):
        raise ContainmentError(f"{J} is not contained in {I}")
    return nu(f, I, e, **kwargs) <= nu(f, J, e, **kwargs)
