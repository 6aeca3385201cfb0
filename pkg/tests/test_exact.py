"""Exact arithmetic layer: cyclotomic numbers, polynomials, binary forms."""
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mckay.exact import (BiForm, ConductorError, Cyclo, InexactDivision,
                         UniPoly, cyclo_from_json, cyclotomic_poly, totient)

CONDUCTORS = [4, 8, 12, 20, 24, 60]


def rand_cyclo(rng, n):
    phi = totient(n)
    num = [rng.randint(-3, 3) for _ in range(phi)]
    return Cyclo(n, num, rng.randint(1, 3))


def test_roots_of_unity_basics():
    i = Cyclo.root_of_unity(1, 4)
    assert i * i == -1
    z = Cyclo.root_of_unity(1, 10)
    tau = z + z.inverse()
    assert tau * tau - tau - 1 == 0
    # zeta_60^12 = zeta_5, and its fifth power is 1
    z60 = Cyclo.root_of_unity(12, 60)
    assert z60 == Cyclo.root_of_unity(1, 5).promote(60)
    acc = Cyclo.one(60)
    for _ in range(5):
        acc = acc * z60
    assert acc == 1


@pytest.mark.parametrize("n", CONDUCTORS)
@pytest.mark.parametrize("k", [0, 1, 2, 5])
def test_root_of_unity_power_sums(n, k):
    total = Cyclo.zero(n)
    for j in range(n):
        total = total + Cyclo.root_of_unity(j * k, n)
    assert total == (n if k % n == 0 else 0)


def test_field_axioms_randomized():
    # 1000 random triples per conductor; inverses checked on every tenth case
    for n in CONDUCTORS:
        rng = random.Random(20_000 + n)
        for case in range(1000):
            x, y, z = (rand_cyclo(rng, n) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert (x + y) + z == x + (y + z)
            if case % 10 == 0 and not x.is_zero():
                assert x * x.inverse() == 1


def test_conjugation_involution_and_multiplicativity():
    rng = random.Random(7)
    for n in CONDUCTORS:
        for _ in range(50):
            x, y = rand_cyclo(rng, n), rand_cyclo(rng, n)
            assert x.conj().conj() == x
            assert (x * y).conj() == x.conj() * y.conj()


def test_promotion_and_equality_across_conductors():
    x = Cyclo.rational(-1, 4)
    assert x.promote(60) == Cyclo.rational(-1, 60)
    assert Cyclo.root_of_unity(1, 5) == Cyclo.root_of_unity(12, 60)
    with pytest.raises(ConductorError):
        Cyclo.root_of_unity(1, 8).promote(60)  # 8 does not divide 60
    # promote then compare round-trips through the lcm
    a = Cyclo.root_of_unity(1, 12)
    assert a.promote(24).promote(120) == a.promote(120)


def test_approx_precision():
    z10 = Cyclo.root_of_unity(1, 10)
    tau = z10 + z10.inverse()
    assert abs(tau.approx() - (1 + math.sqrt(5)) / 2) < 1e-12
    assert Cyclo.zero(24).approx() == 0
    z8 = Cyclo.root_of_unity(1, 8)
    want = complex(math.sqrt(2) / 2, math.sqrt(2) / 2)
    assert abs(z8.approx() - want) < 1e-12


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_poly(60)) == totient(60) + 1


def test_json_round_trip():
    x = Cyclo.root_of_unity(7, 60) * Fraction(2, 3) + 1
    assert cyclo_from_json(x.to_json()) == x


def test_poly_eval_examples():
    p = UniPoly([1] + [0] * 29 + [1])          # 1 + t^30
    assert p.eval_cyclo(Cyclo.one(4)) == 2
    q = UniPoly([5, 0, 7])
    assert q.eval_cyclo(Cyclo.zero(4)) == 5    # constant coefficient
    z10 = Cyclo.root_of_unity(1, 10)
    tau = z10 + z10.inverse()
    p1a = UniPoly.monomial(1) + UniPoly.monomial(11) + UniPoly.monomial(19) \
        + UniPoly.monomial(29)
    assert p1a.eval_cyclo(z10) == tau * 2


@given(st.lists(st.integers(-4, 4), max_size=6),
       st.lists(st.integers(-4, 4), max_size=6),
       st.integers(0, 19))
@settings(max_examples=150, deadline=None)
def test_poly_eval_is_ring_hom(a, b, k):
    p, q = UniPoly(a), UniPoly(b)
    x = Cyclo.root_of_unity(k, 20)
    assert (p * q).eval_cyclo(x) == p.eval_cyclo(x) * q.eval_cyclo(x)
    assert (p + q).eval_cyclo(x) == p.eval_cyclo(x) + q.eval_cyclo(x)


def test_poly_divide_exact():
    one_minus_t4 = UniPoly([1, 0, 0, 0, -1])
    one_minus_t = UniPoly([1, -1])
    q = one_minus_t4.divide_exact(one_minus_t)
    assert q == UniPoly([1, 1, 1, 1])
    p = UniPoly([2, 3, 1])
    assert p.divide_exact(p) == UniPoly([1])
    with pytest.raises(InexactDivision):
        UniPoly([1, 0, 1]).divide_exact(UniPoly([1, 1]))


def test_poly_degree_sentinel_and_center():
    assert UniPoly().degree == float("-inf")
    assert UniPoly([0, 0]).is_zero()
    p = UniPoly([0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])
    assert p.center() == Fraction(6)
    assert p.is_palindromic_about(Fraction(6))
    assert not p.is_palindromic_about(Fraction(5))


def test_biform_product_and_division():
    n = 12
    one = Cyclo.one(n)
    x_plus_y = BiForm([one, one])                      # x + y
    sq = x_plus_y * x_plus_y
    assert sq.degree == 2
    assert sq.divide_exact(x_plus_y) == x_plus_y
    with pytest.raises(InexactDivision):
        BiForm([one, Cyclo.zero(n), one]).divide_exact(x_plus_y)  # x^2+y^2


def test_biform_substitute_matches_manual():
    n = 4
    i = Cyclo.root_of_unity(1, n)
    zero, one = Cyclo.zero(n), Cyclo.one(n)
    f = BiForm([zero, one])         # f(x, y) = x
    g = f.substitute(zero, one, -one, zero)   # matrix [[0,1],[-1,0]]
    assert g == BiForm([one, zero])           # f(g (x,y)) = y
    h = BiForm([one, zero, one])    # x^2 + y^2
    rot = h.substitute(i, zero, zero, i.inverse())
    assert rot == BiForm([one * -1, zero, one * -1])
