"""
cyclo 산술 테스트
"""

import math
from fractions import Fraction

import pytest

from oracles import all_elements, brute_valuation
from rings.cyclo import (
    CycloElem, DivisionError, RingError, _tables, as_weight, divided_power_epsilon, divided_power_quotient,
    epsilon, exact_div, make_ring, uniformizer, vp_factorial, weight_level, zeta_power,
)


@pytest.mark.parametrize("p,s,N,e,modulus", [
    (3, 1, 2, 2, 9),
    (5, 1, 3, 4, 125),
    (3, 2, 2, 6, 9),
    (7, 1, 1, 6, 7),
])
def test_make_ring_sizes(p, s, N, e, modulus):
    ring = make_ring(p, s, N)
    assert ring.e == e
    assert ring.modulus == modulus
    assert ring.max_val == N * e


def test_level_two_cyclotomic_polynomial():
    # Φ_9 = x^6 + x^3 + 1
    assert _tables(3, 2).phi == (1, 0, 0, 1, 0, 0, 1)


@pytest.mark.parametrize("p,s,N", [(2, 1, 2), (9, 1, 2), (3, 0, 2), (3, 1, 0)])
def test_make_ring_rejects(p, s, N):
    with pytest.raises(RingError):
        make_ring(p, s, N)


def test_epsilon_squared(ring):
    # (ζ_3 − 1)² = ζ² − 2ζ + 1 = −3ζ
    assert epsilon(ring) ** 2 == CycloElem.monomial(ring, 1, -3)


def test_identity_and_mismatch(ring, deep_ring):
    a = CycloElem.from_poly(ring, [4, 7])
    assert CycloElem.one(ring) * a == a
    with pytest.raises(RingError):
        a * CycloElem.one(deep_ring)


def test_epsilon_power_matches_p():
    ring = make_ring(5, 1, 3)
    eps = epsilon(ring)
    assert (eps ** 4).valuation == CycloElem.from_int(ring, 5).valuation == 4


def test_zero_valuation_is_max(ring):
    assert CycloElem.zero(ring).valuation == ring.max_val


def test_valuation_matches_definition(ring):
    for a in all_elements(ring)[::7]:
        assert a.valuation == brute_valuation(a)


def test_valuation_additive_below_precision(deep_ring):
    pi = uniformizer(deep_ring)
    unit = CycloElem.from_poly(deep_ring, [2, 5])
    x, y = (pi ** 2) * unit, pi ** 3
    assert (x * y).valuation == x.valuation + y.valuation == 5


def test_exact_div(deep_ring):
    pi = uniformizer(deep_ring)
    unit = CycloElem.from_poly(deep_ring, [1, 1])
    a = (pi ** 3) * unit
    q = exact_div(a, pi)
    assert q * pi == a
    assert q.valuation == 2
    with pytest.raises(DivisionError):
        exact_div(pi, pi ** 2)
    with pytest.raises(DivisionError):
        exact_div(pi, CycloElem.zero(deep_ring))


@pytest.mark.parametrize("n", range(7))
def test_divided_power_epsilon(deep_ring, n):
    eps = epsilon(deep_ring)
    assert divided_power_epsilon(deep_ring, n) * math.factorial(n) == eps ** n


@pytest.mark.parametrize("n", range(5))
def test_divided_power_quotient(deep_ring, n):
    eps = epsilon(deep_ring)
    assert divided_power_quotient(eps, n) * eps == divided_power_epsilon(deep_ring, n + 1)


def test_vp_factorial():
    assert vp_factorial(3, 9) == 4
    assert vp_factorial(5, 25) == 6
    assert vp_factorial(3, 2) == 0


def test_inverse(ring):
    u = CycloElem.from_poly(ring, [1, 1])
    assert u * u.inverse() == CycloElem.one(ring)
    with pytest.raises(DivisionError):
        uniformizer(ring).inverse()


def test_zeta_power(level_two_ring, ring):
    assert zeta_power(level_two_ring, Fraction(1, 3)) == epsilon(level_two_ring) + 1
    assert zeta_power(ring, 0) == CycloElem.one(ring)
    assert zeta_power(ring, Fraction(4, 3)) == CycloElem.monomial(ring, 1)
    with pytest.raises(RingError):
        zeta_power(ring, Fraction(1, 9))


def test_weights():
    assert as_weight(Fraction(7, 3)) == Fraction(1, 3)
    assert weight_level(3, Fraction(2, 9)) == 2
    assert weight_level(3, 0) == 1
    with pytest.raises(RingError):
        weight_level(3, Fraction(1, 2))


def test_lift_and_reduce(ring, deep_ring):
    a = CycloElem.from_poly(ring, [8, 1])
    lifted = a.lift(deep_ring)
    # 균형 대표원: 8 ≡ −1
    assert lifted == CycloElem.from_poly(deep_ring, [-1, 1])
    assert lifted.reduce_to(ring) == a


def test_reliable_not_compared(ring):
    a = CycloElem.from_poly(ring, [1, 2])
    assert a.with_reliable(1) == a
    assert (a.with_reliable(1) + a).precision == 1
