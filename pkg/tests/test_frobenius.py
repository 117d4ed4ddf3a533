import random

import pytest

from fthresh import (
    FrobeniusLevel,
    Ideal,
    InvariantViolation,
    NotAtOriginError,
    Poly,
    PreconditionError,
    bracket_power,
    eth_root,
    fedder_fpure,
    make_ring,
    poly_pow,
    power_root,
    splitting_test,
)

from conftest import ideal
from oracles import monomial_root

R7 = make_ring(7, "x,y")
R5 = make_ring(5, "x,y")


def test_bracket_power_examples():
    assert bracket_power(ideal(R7, "x,y"), FrobeniusLevel(7, 1)) == ideal(R7, "x^7, y^7")
    assert bracket_power(ideal(R5, "x+y"), 1) == ideal(R5, "x^5+y^5")
    R3 = make_ring(3, "x,y")
    assert bracket_power(ideal(R3, "x,y") ** 2, 1) == ideal(R3, "x^6, x^3*y^3, y^6")


def test_bracket_power_reuses_reduced_basis():
    J = ideal(R7, "x^2+y^3, y")
    J.gb
    B = bracket_power(J, 1)
    assert B._gb is not None
    assert B == Ideal(R7, [g.frobenius(1) for g in J.generators])


def test_eth_root_examples():
    assert eth_root(ideal(R7, "x^7"), 1) == ideal(R7, "x")
    assert eth_root(ideal(R7, "x^6*y^6"), 1).is_unit
    R = make_ring(5, "x")
    assert eth_root(ideal(R, "x^13"), 2).is_unit
    assert eth_root(ideal(R, "x^26"), 2) == ideal(R, "x")
    assert eth_root(ideal(R, "x^26"), 0) == ideal(R, "x^26")


def test_level_validation():
    with pytest.raises(ValueError):
        FrobeniusLevel(5, -1)
    with pytest.raises(ValueError):
        eth_root(ideal(R7, "x"), FrobeniusLevel(5, 1))
    assert FrobeniusLevel(5, 3).q == 125


def test_fedder_examples():
    assert fedder_fpure(R5.parse("x*y"))
    for p in (2, 3, 5, 7):
        assert fedder_fpure(make_ring(p, "x,y").parse("x"))
    assert not fedder_fpure(R7.parse("x^2+y^3"))
    with pytest.raises(NotAtOriginError):
        fedder_fpure(R7.parse("x+1"))
    with pytest.raises(PreconditionError):
        fedder_fpure(R7.zero())


def test_splitting_examples():
    for p in (2, 3, 5):
        x = make_ring(p, "x,y").parse("x")
        for e in (1, 2):
            assert splitting_test(x, p**e - 1, e)
            assert not splitting_test(x, p**e, e)
    f = R7.parse("x^2+y^3")
    assert splitting_test(f, 5, 1)
    assert not splitting_test(f, 6, 1)
    assert poly_pow(f, 5).coefficient((6, 6)).value == 3


def test_postcondition_check_runs():
    I = ideal(R7, "x^9*y + 3*x^2*y^8, y^15")
    K = eth_root(I, 1, check=True)
    assert I <= bracket_power(K, 1)


def _random_ideal(rng, ring, max_gens=3, max_deg=None, binomial=True):
    max_deg = max_deg or 3 * ring.p
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        nterms = rng.randint(1, 2) if binomial else 1
        t = {tuple(rng.randint(0, max_deg) for _ in range(ring.nvars)): rng.randint(1, ring.p - 1)
             for _ in range(nterms)}
        gens.append(Poly(ring, t))
    return Ideal(ring, gens)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_root_calculus_random(p):
    rng = random.Random(p)
    ring = make_ring(p, "x,y")
    for _ in range(25):
        e = rng.randint(1, 3)
        q = p**e
        I = _random_ideal(rng, ring, max_deg=2 * q)
        J = _random_ideal(rng, ring, max_deg=2 * q)
        K = eth_root(I, e)
        assert I <= bracket_power(K, e)
        assert eth_root(bracket_power(J, e), e) == J
        e1 = rng.randint(0, e)
        assert eth_root(eth_root(I, e1), e - e1) == K
        assert eth_root(I + J, e) == K + eth_root(J, e)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_monomial_root_law(p):
    rng = random.Random(10 + p)
    ring = make_ring(p, "x,y,z")
    for _ in range(40):
        e = rng.randint(1, 3)
        a = tuple(rng.randint(0, 3 * p**e) for _ in range(3))
        got = eth_root(Ideal(ring, [ring.monomial(a)]), e)
        assert got.gb == (ring.monomial(monomial_root(a, p**e)),)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_power_root_matches_direct_root(p):
    ring = make_ring(p, "x,y")
    for fs in ["x^2+y^3", "x^2*y+x*y^2", "x+y", "x^3+y^3+x*y"]:
        f = ring.parse(fs)
        for e in (1, 2):
            for a in (0, 1, p - 1, p, p**e - 1, p**e + 3, 2 * p**e + p):
                assert power_root(f, a, e) == eth_root(Ideal(ring, [poly_pow(f, a)]), e)


def test_splitting_flatness_random():
    rng = random.Random(5)
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        ring = make_ring(p, "x,y")
        f = Poly(ring, {(rng.randint(0, 3), rng.randint(0, 3)): 1 for _ in range(2)})
        if not f.vanishes_at_origin() or f.is_zero:
            continue
        e = rng.randint(1, 2)
        a = rng.randint(0, p**e)
        assert splitting_test(f, a, e) == splitting_test(f, p * a, e + 1)


def test_debug_flag_catches_bad_root(monkeypatch):
    import fthresh.frobenius as fr

    monkeypatch.setattr(fr, "_root_generators", lambda g, q: [g.ring.parse("x")])
    with pytest.raises(InvariantViolation):
        fr.eth_root(ideal(R7, "y^7"), 1, check=True)
