"""
PD 대수, Γ-작용, Θ, ι, 주기 모델 테스트
"""

import dataclasses
import math
import random

import pytest

from algebras.pdalg import (
    FaltingsModelElem, PDAlgebraSpec, PDElem, PDError, build_period_model, comparison_iota, faltings_gamma,
    faltings_matrix, gamma_act, gamma_pd_matrix, higgs_theta, iota_higgs_compatible, module_gamma_matrix,
    module_theta_matrix, multi_indices, pd_mul, random_pd_elem, theta_pd_matrix,
)
from generators.instance_generator import make_rho, random_elem, random_matrix
from rings.cyclo import CycloElem, epsilon, uniformizer
from rings.matrix import ChainMatrix


@pytest.fixture
def spec2(ring):
    return PDAlgebraSpec(ring, 2, make_rho(ring), 3)


def test_multi_indices_order():
    assert multi_indices(2, 2) == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    assert len(multi_indices(3, 4)) == math.comb(7, 3)


def test_spec_rejects(ring, level_two_ring):
    with pytest.raises(PDError):
        PDAlgebraSpec(ring, 0, make_rho(ring), 3)
    # 레벨 2 에서 val(π) = 1 < val(ζ_3 − 1) = 3
    with pytest.raises(PDError):
        PDAlgebraSpec(level_two_ring, 1, uniformizer(level_two_ring), 3)


def test_divided_power_product(spec2):
    y = PDElem.basis(spec2, (1, 0))
    assert pd_mul(y, y) == PDElem.basis(spec2, (2, 0), CycloElem.from_int(spec2.ring, 2))
    # 차수가 D 를 넘는 항은 사라짐
    top = PDElem.basis(spec2, (2, 1))
    assert pd_mul(top, y).is_zero()


def test_product_commutative_associative(spec2, rng):
    u, v, w = (random_pd_elem(spec2, rng) for _ in range(3))
    assert u * v == v * u
    assert (u * v) * w == u * (v * w)
    assert u * PDElem.one(spec2) == u


def test_gamma_is_multiplicative_on_low_degree(spec2, rng):
    u = random_pd_elem(spec2, rng).truncate(1)
    v = random_pd_elem(spec2, rng).truncate(2)
    for i in range(2):
        assert gamma_act(i, u * v) == gamma_act(i, u) * gamma_act(i, v)


def test_gamma_matrices(spec2, rng):
    u = random_pd_elem(spec2, rng)
    G0, G1 = gamma_pd_matrix(spec2, 0), gamma_pd_matrix(spec2, 1)
    assert G0.apply(u.coeffs) == gamma_act(0, u).coeffs
    assert G0.matmul(G1) == G1.matmul(G0)
    assert spec2.shift_coefficients[1] == spec2.rho * epsilon(spec2.ring)
    with pytest.raises(PDError):
        gamma_act(2, u)


def test_theta_commutes_with_gamma(spec2, rng):
    u = random_pd_elem(spec2, rng)
    for i in range(2):
        T = theta_pd_matrix(spec2, i)
        assert T.apply(u.coeffs) == higgs_theta(u)[i].coeffs
        for j in range(2):
            G = gamma_pd_matrix(spec2, j)
            assert T.matmul(G) == G.matmul(T)
    assert theta_pd_matrix(spec2, 0, scaled=True) * spec2.rho == theta_pd_matrix(spec2, 0)


def test_twisted_gamma_on_vectors(spec2, rng):
    P = ChainMatrix.identity(spec2.ring, 2) + random_matrix(spec2.ring, rng, 2, 1)
    comps = [random_pd_elem(spec2, rng) for _ in range(2)]
    moved = gamma_act(0, comps, rep=[P, P])
    expected = [gamma_act(0, c) for c in comps]
    for k in range(2):
        acc = PDElem.zero(spec2)
        for l in range(2):
            acc = acc + expected[l].scale(P[k, l])
        assert moved[k] == acc


def test_module_matrices_commute(spec2, rng):
    B = random_matrix(spec2.ring, rng, 2)
    theta = B * uniformizer(spec2.ring)
    P = ChainMatrix.identity(spec2.ring, 2) + B.matmul(B) * uniformizer(spec2.ring)
    G0 = module_gamma_matrix(spec2, 0, P)
    G1 = module_gamma_matrix(spec2, 1, P)
    T0 = module_theta_matrix(spec2, 0, theta)
    T1 = module_theta_matrix(spec2, 1, theta)
    assert G0.matmul(G1) == G1.matmul(G0)
    assert T0.matmul(T1) == T1.matmul(T0)


@pytest.mark.parametrize("seed", range(5))
def test_iota_higgs_compatible(ring, seed):
    spec = PDAlgebraSpec(ring, 2, make_rho(ring), 4)
    assert iota_higgs_compatible(random_pd_elem(spec, random.Random(seed)))


def test_iota_on_basis(ring):
    spec = PDAlgebraSpec(ring, 1, make_rho(ring), 3)
    image = comparison_iota(PDElem.basis(spec, (2,)))
    eps = epsilon(ring)
    # ε^{[2]}·2 = ε²
    assert image.coeffs[2] * 2 == eps * eps


def test_faltings_model(ring, rng):
    rho = make_rho(ring)
    w = FaltingsModelElem(ring, tuple(random_elem(ring, rng) for _ in range(3)))
    for i in range(2):
        assert faltings_matrix(ring, 2, i, rho).apply(w.coords) == faltings_gamma(i, w, rho).coords
    assert faltings_gamma(0, faltings_gamma(1, w, rho), rho) == faltings_gamma(1, faltings_gamma(0, w, rho), rho)
    with pytest.raises(PDError):
        faltings_gamma(2, w, rho)


@pytest.mark.parametrize("d,D", [(1, 4), (2, 3)])
def test_period_model_from_envelope(ring, d, D):
    model = build_period_model(ring, d, make_rho(ring), D)
    assert model.gamma_compatible()
    assert model.theta_compatible()
    assert model.pd_ideal_vanishes()


def test_pd_ideal_catches_wrong_quotient(ring):
    model = build_period_model(ring, 1, make_rho(ring), 3)
    e_column = model.envelope_indices.index((1, (0,)))
    columns = model.quotient.columns()
    columns[e_column] = tuple(CycloElem.zero(ring) for _ in columns[e_column])
    broken = dataclasses.replace(model, quotient=ChainMatrix.from_columns(ring, columns, model.quotient.nrows))
    assert not broken.pd_ideal_vanishes()
    image = model.quotient.apply(model.ideal_generator(1, (0,)))
    assert all(c.is_zero() for c in image)
