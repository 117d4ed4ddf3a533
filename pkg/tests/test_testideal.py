import random
from fractions import Fraction
from math import floor

import pytest

from fthresh import (
    Ideal,
    StabilizationError,
    eth_root,
    fpt,
    jumping_numbers,
    make_ring,
    poly_pow,
    test_ideal,
    verify_correspondence,
)
from fthresh.testideal import test_ideal_chain

from conftest import ideal


def test_examples():
    R5 = make_ring(5, "x")
    x = R5.parse("x")
    assert test_ideal(x, Fraction(1, 2)).is_unit
    assert test_ideal(x, 0).is_unit
    for p in (2, 3, 5, 7):
        R = make_ring(p, "x")
        assert test_ideal(R.parse("x"), 1) == ideal(R, "x")


def test_cusp_chain_strict():
    R = make_ring(7, "x,y")
    f = R.parse("x^2+y^3")
    a, b = test_ideal(f, Fraction(5, 7)), test_ideal(f, Fraction(6, 7))
    assert b <= a and not a <= b
    assert a.is_unit and b == ideal(R, "x,y")
    assert test_ideal(f, 1) == ideal(R, "x^2+y^3")


def test_bms_oracle():
    """tau(f^s) = (f^ceil(s p^E))^[1/p^E] for E large; with s just above a/p^e
    this is a single root at a deep level, no chain or stabilization involved."""
    rng = random.Random(3)
    for p in (2, 3, 5):
        R = make_ring(p, "x,y")
        for fs in ["x^2+y^3", "x*y*(x+y)", "x^3+y^2+x*y"]:
            f = R.parse(fs)
            for _ in range(4):
                e = rng.randint(1, 2)
                a = rng.randint(0, 2 * p**e)
                # tau(f^t) = (f^ceil(t p^E))^[1/p^E] for E large, with t just above a/p^e
                E = e + 4
                direct = eth_root(Ideal(R, [poly_pow(f, a * p ** (E - e) + 1)]), E)
                tau = test_ideal(f, Fraction(a, p**e))
                assert tau == direct
                assert tau <= eth_root(Ideal(R, [poly_pow(f, a)]), e)


def test_right_continuity():
    rng = random.Random(9)
    for p, fs in [(3, "x^2+y^3"), (5, "x^2+y^3"), (3, "x*y*(x+y)"), (2, "x^3+y^2")]:
        R = make_ring(p, "x,y")
        f = R.parse(fs)
        E = 1
        for a in rng.sample(range(0, 2 * p**E + 1), 4):
            t = Fraction(a, p**E)
            assert test_ideal(f, t) == test_ideal(f, t + Fraction(1, p ** (E + 3)))


def test_chain_is_ascending_and_errors():
    R = make_ring(7, "x,y")
    f = R.parse("x^2+y^3")
    chain = test_ideal_chain(f, Fraction(5, 7))
    for (_, a), (_, b) in zip(chain, chain[1:]):
        assert a <= b
    with pytest.raises(StabilizationError) as exc:
        test_ideal(f, Fraction(1, 3), max_e=2, stabilization_window=3)
    assert exc.value.chain
    with pytest.raises(ValueError):
        test_ideal(f, Fraction(1, 2), stabilization_window=0)


def test_jumps_of_x():
    for p in (2, 3, 5):
        R = make_ring(p, "x")
        prof = jumping_numbers(R.parse("x"), 2, 1)
        assert len(prof.jumps) == 2
        assert prof.jump_containing(1) and prof.jump_containing(2)
        assert prof.guesses == [1, 2]
        for t, I in prof.entries.items():
            assert I == Ideal(R, [R.parse("x") ** floor(t)])


def test_jumps_of_xy():
    R = make_ring(3, "x,y")
    prof = jumping_numbers(R.parse("x*y"), 1, 2)
    assert prof.jumps == [(Fraction(8, 9), Fraction(1))]
    assert prof.ideal_at(0).is_unit


def test_cusp_jump_contains_fpt_guess():
    R = make_ring(7, "x,y")
    f = R.parse("x^2+y^3")
    prof = jumping_numbers(f, 1, 2)
    est = fpt(f, 2)
    lo, hi = prof.jumps[0]
    assert lo < est.guess <= hi and prof.guesses[0] == Fraction(5, 6)
    assert (lo, hi) == (Fraction(40, 49), Fraction(41, 49))


@pytest.mark.parametrize("fs,p", [("x^2+y^3", 5), ("x^2*y+x*y^2", 3), ("x^3+y^3", 7)])
def test_unit_flips_inside_fpt_interval(fs, p):
    R = make_ring(p, "x,y")
    f = R.parse(fs)
    E = 2
    est = fpt(f, E)
    prof = jumping_numbers(f, 1, E)
    for t, I in prof.entries.items():
        assert I.is_unit == (t < est.upper)
    # anti-monotone across the grid
    ideals = list(prof.entries.values())
    for a, b in zip(ideals, ideals[1:]):
        assert b <= a


def test_threads_give_same_profile():
    R = make_ring(5, "x,y")
    f = R.parse("x^2+y^3")
    a = jumping_numbers(f, 1, 1)
    b = jumping_numbers(f, 1, 1, jobs=4)
    assert a.entries == b.entries and a.jumps == b.jumps


@pytest.mark.parametrize("fs", ["x", "x*y", "x^2*y^3"])
def test_skoda_on_monomials_exploratory(fs):
    p = 3
    R = make_ring(p, "x,y")
    f = R.parse(fs)
    for a in range(0, p + 1):
        t = Fraction(a, p)
        lhs = test_ideal(f, t + 1)
        rhs = Ideal(R, [f * g for g in test_ideal(f, t).gb])
        assert lhs == rhs


def test_verify_examples():
    R = make_ring(5, "x")
    x = R.parse("x")
    rep = verify_correspondence(x, [ideal(R, "x")], 2, 2)
    assert rep.passed and not rep.retried
    assert all(rep.group_passed(g) for g in "abc")
    rep = verify_correspondence(x, [ideal(R, "x^2")], 2, 2, include_jump_ideals=False)
    assert rep.passed
    rep = verify_correspondence(x, [ideal(R, "1")], 2, 2, include_jump_ideals=False)
    assert rep.passed
    assert rep.skipped and "unit ideal" in rep.skipped[0][1]
    d = rep.to_dict()
    assert d["groups"] == {"a": True, "b": True, "c": True}


def test_verify_cusp_and_family():
    R = make_ring(7, "x,y")
    fam = [ideal(R, "x,y"), ideal(R, "x,y") ** 2]
    for fs in ["x", "x*y", "x^2+y^3"]:
        rep = verify_correspondence(R.parse(fs), fam, 2, 2)
        assert rep.passed, rep.to_dict()


def test_verify_reports_not_in_radical():
    R = make_ring(5, "x,y")
    rep = verify_correspondence(R.parse("x"), [ideal(R, "y")], 1, 1, include_jump_ideals=False)
    assert rep.skipped[0][1] == "f not in sqrt(J)"
