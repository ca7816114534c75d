"""
복체, 코호몰로지, Koszul, Lη 테스트
"""

import random

import pytest

from analyzers.complexes import (
    ComplexError, FreeComplex, ModulePresentation, capped_factors, cohomology, decalage_cohomology,
    decalage_presentation, eta_koszul_rescale, image_presentation, kernel_generators, koszul_complex,
    stable_precision,
)
from generators.instance_generator import random_elem, random_matrix
from oracles import brute_cohomology_order, order_of
from rings.cyclo import CycloElem, epsilon, uniformizer
from rings.matrix import ChainMatrix


def _scalar_complex(ring, a):
    return koszul_complex(ring, 1, [ChainMatrix.scalar(ring, 1, a)])


def test_rejects_non_complex(ring):
    one = ChainMatrix.identity(ring, 1)
    with pytest.raises(ComplexError):
        FreeComplex(ring, 0, (1, 1, 1), (one, one))
    with pytest.raises(ComplexError):
        FreeComplex(ring, 0, (1, 2), (one,))


def test_rejects_non_commuting(ring):
    E = ChainMatrix.from_rows(ring, [[0, 1], [0, 0]])
    with pytest.raises(ComplexError):
        koszul_complex(ring, 2, [E, E.transpose()])


def test_multiplication_by_pi(ring):
    pi = uniformizer(ring)
    C = _scalar_complex(ring, pi)
    # 유한 모델: H^0 = π^{3}O ≅ O/π, H^1 = O/π
    assert cohomology(C, 0).factors == (1,)
    assert cohomology(C, 1).factors == (1,)
    # 정밀도 3 에서는 H^1 의 꼬임에서 온 H^0 가 사라짐
    R = stable_precision(C)
    assert R == ring.max_val - 1
    assert cohomology(C, 0, R).factors == ()
    assert cohomology(C, 1, R).factors == (1,)


def test_zero_differential_is_free(ring):
    C = _scalar_complex(ring, CycloElem.zero(ring))
    assert cohomology(C, 0).factors == (ring.max_val,)
    assert cohomology(C, 1).factors == (ring.max_val,)
    assert cohomology(C, 1).free_rank() == 1


@pytest.mark.parametrize("seed", range(4))
def test_one_map_orders_match_brute_force(tiny_ring, seed):
    local = random.Random(seed)
    phi = random_matrix(tiny_ring, local, 2)
    C = koszul_complex(tiny_ring, 2, [phi])
    d0 = C.differential(0)
    zero_in = ChainMatrix.zeros(tiny_ring, 2, 1)
    zero_out = ChainMatrix.zeros(tiny_ring, 1, 2)
    assert order_of(cohomology(C, 0).factors, 3) == brute_cohomology_order(zero_in, d0)
    assert order_of(cohomology(C, 1).factors, 3) == brute_cohomology_order(d0, zero_out)


@pytest.mark.parametrize("seed", range(4))
def test_two_maps_middle_degree_matches_brute_force(tiny_ring, seed):
    local = random.Random(seed)
    a, b = random_elem(tiny_ring, local), random_elem(tiny_ring, local, 1)
    maps = [ChainMatrix.scalar(tiny_ring, 1, a), ChainMatrix.scalar(tiny_ring, 1, b)]
    C = koszul_complex(tiny_ring, 1, maps)
    assert C.ranks == (1, 2, 1)
    H1 = cohomology(C, 1)
    assert order_of(H1.factors, 3) == brute_cohomology_order(C.differential(0), C.differential(1))


def test_euler_characteristic(ring, rng):
    B = random_matrix(ring, rng, 2)
    C = koszul_complex(ring, 2, [B, B.matmul(B), B])
    assert C.ranks == (2, 6, 6, 2)
    assert C.euler_characteristic() == 0


def test_kernel_generators(ring, rng):
    pi = uniformizer(ring)
    d = ChainMatrix.from_rows(ring, [[pi, pi ** 2], [0, pi ** 3]])
    for g in kernel_generators(d):
        assert all(x.is_zero() for x in d.apply(g))


def test_image_presentation(ring):
    pi = uniformizer(ring)
    C = FreeComplex(ring, 0, (1, 2), (ChainMatrix.zeros(ring, 2, 1),))
    zero = CycloElem.zero(ring)
    sub = image_presentation(C, 1, [(pi, zero)])
    assert sub.factors == (ring.max_val - 1,)
    full = image_presentation(C, 1, [(CycloElem.one(ring), zero), (zero, CycloElem.one(ring))])
    assert full.factors == cohomology(C, 1).factors


def test_decalage_presentation(ring):
    pi = uniformizer(ring)
    H = ModulePresentation(ring, (1, 3, 4), ((), (), ()), 4)
    out = decalage_presentation(H, pi)
    assert out.factors == (2, 3)
    assert out.reliable_precision == 3
    with pytest.raises(ValueError):
        decalage_presentation(H, CycloElem.zero(ring))


def test_decalage_kills_small_torsion(ring):
    pi = uniformizer(ring)
    C = _scalar_complex(ring, pi)
    assert decalage_cohomology(C, pi, 1).factors == ()


def test_eta_koszul_rescale(deep_ring, rng):
    eps = epsilon(deep_ring)
    theta = random_matrix(deep_ring, rng, 2)
    C = eta_koszul_rescale([theta * eps], CycloElem.one(deep_ring), scale=eps)
    lower = deep_ring.with_precision(deep_ring.N - 1)
    assert C.differential(0).reduce_to(lower) == theta.reduce_to(lower)
    assert C.precision == deep_ring.max_val - eps.valuation
    with pytest.raises(ComplexError):
        eta_koszul_rescale([], eps)


def test_capped_factors():
    assert capped_factors([0, 1, 5, 3], 4) == [1, 3, 4]
