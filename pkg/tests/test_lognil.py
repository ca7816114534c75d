"""
로그 멱영 표현, f_V/g_V, V_{Θ/ρ}, Γ-코호몰로지 테스트
"""

import random
from fractions import Fraction

import pytest

from algebras.lognil import (
    LogNilpRep, MAlphaModule, RepresentationError, WitnessError, coho_principle_h1, coho_principle_triangle,
    exp_neg_e_theta, exp_theta_X, f_inverse, f_series, f_V, g_V, g_V_inverse, gamma_cohomology_M_alpha,
    gamma_minus_one, log_unipotent, pd_gamma_cohomology, theta_alpha, v_theta_rho_member,
)
from algebras.pdalg import PDAlgebraSpec
from generators.instance_generator import (
    commuting_family, make_rho, random_elem, random_m_elem, random_matrix, random_module, rho_scaled_theta,
    slack_for,
)
from rings.cyclo import CycloElem, epsilon, make_ring, uniformizer, zeta_power
from rings.matrix import ChainMatrix


def _theta(ring, rng, r=2):
    return commuting_family(ring, rng, r, 1, uniformizer(ring))[0]


def test_exp_and_F(deep_ring, rng):
    theta = _theta(deep_ring, rng)
    eye = ChainMatrix.identity(deep_ring, 2)
    P = exp_neg_e_theta(theta)
    F = f_series(theta)
    eps = epsilon(deep_ring)
    assert theta.matmul(F) * eps == P - eye
    assert f_inverse(F).matmul(F).is_identity()
    zero = ChainMatrix.zeros(deep_ring, 2, 2)
    assert exp_neg_e_theta(zero).is_identity()
    assert f_series(zero) == -eye


def test_exp_is_multiplicative_on_commuting(deep_ring, rng):
    B = random_matrix(deep_ring, rng, 2)
    pi = uniformizer(deep_ring)
    A1, A2 = B * pi, B.matmul(B) * pi
    assert exp_neg_e_theta(A1 + A2) == exp_neg_e_theta(A1).matmul(exp_neg_e_theta(A2))


def test_theta_alpha(ring, rng):
    theta = _theta(ring, rng)
    alpha = Fraction(1, 3)
    z = zeta_power(ring, alpha)
    T = theta_alpha(theta, alpha)
    lhs = T * (z - 1)
    rhs = exp_neg_e_theta(theta) * z - ChainMatrix.identity(ring, 2)
    assert lhs == rhs
    with pytest.raises(ValueError):
        theta_alpha(theta, 0)


def test_log_recovers_theta(rng):
    work = make_ring(3, 1, 5)
    target = make_ring(3, 1, 2)
    theta = _theta(work, rng)
    result = log_unipotent(exp_neg_e_theta(theta), target)
    assert result.theta == theta.reduce_to(target)
    assert result.reliable >= target.max_val


def test_rep_validation(ring, rng):
    rho = make_rho(ring)
    E = ChainMatrix.from_rows(ring, [[0, uniformizer(ring)], [0, 0]])
    with pytest.raises(RepresentationError):
        LogNilpRep(ring, (E, E.transpose()), rho)
    with pytest.raises(RepresentationError):
        LogNilpRep(ring, (ChainMatrix.identity(ring, 2),), rho, floor=1)
    with pytest.raises(RepresentationError):
        LogNilpRep(ring, (), rho)
    rep = LogNilpRep(ring, (E,), rho)
    assert rep.derived_commute()
    assert rep.rank == 2 and rep.d == 1


@pytest.mark.parametrize("alpha", [0, Fraction(1, 3), Fraction(2, 3)])
@pytest.mark.parametrize("D", [3, 5])
def test_pd_gamma_cohomology_shape(ring, alpha, D):
    spec = PDAlgebraSpec(ring, 1, make_rho(ring), D)
    assert pd_gamma_cohomology(spec, alpha).matches()


def test_pd_gamma_cohomology_other_prime():
    ring = make_ring(5, 1, 2)
    spec = PDAlgebraSpec(ring, 1, make_rho(ring), 4)
    coh = pd_gamma_cohomology(spec)
    assert coh.matches()
    assert list(coh.h0.capped(coh.precision)) == [coh.precision]


def test_pd_gamma_cohomology_needs_one_variable(ring):
    with pytest.raises(ValueError):
        pd_gamma_cohomology(PDAlgebraSpec(ring, 2, make_rho(ring), 2))


@pytest.mark.parametrize("seed", range(3))
def test_module_cohomology_shape(ring, seed):
    local = random.Random(seed)
    D = 4
    module = random_module(ring, local, 2, D, slack=slack_for(ring, D, 1))
    assert gamma_cohomology_M_alpha(module).matches()
    twisted = MAlphaModule(ring, module.theta, module.P, module.rho, Fraction(1, 3), D)
    assert gamma_cohomology_M_alpha(twisted).matches()


@pytest.mark.parametrize("seed", range(3))
def test_g_and_f(ring, seed):
    local = random.Random(seed)
    module = random_module(ring, local, 2, 4)
    y = random_m_elem(module, local)
    g = g_V(y)
    assert g.coefficient(0) == (CycloElem.zero(ring),) * 2
    assert gamma_minus_one(g) == f_V(y)
    assert g_V_inverse(g) == y


def test_f_needs_weight_zero(ring, rng):
    module = random_module(ring, rng, 1, 3, alpha=Fraction(1, 3))
    with pytest.raises(ValueError):
        g_V(random_m_elem(module, rng))


def test_cohomology_principle(ring, rng):
    module = random_module(ring, rng, 2, 3)
    assert coho_principle_h1(module).agrees()
    y = random_m_elem(module, rng, 2)
    v = tuple(random_elem(ring, rng) for _ in range(2))
    assert coho_principle_triangle(y, v)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_witness_chain_accepts_rho_multiple(deep_ring, rng, n):
    rho = make_rho(deep_ring)
    theta, theta_prime = rho_scaled_theta(deep_ring, rng, 2, n, rho)
    assert not theta_prime.is_zero()
    assert theta ** n == theta_prime * rho ** n
    w = tuple(random_elem(deep_ring, rng) for _ in range(2))
    v = tuple(x * rho ** (n - 1) for x in w)
    witness = v_theta_rho_member(theta, rho, v)
    assert witness.accepted
    for prev, cur in zip(witness.chain, witness.chain[1:]):
        assert tuple(x * rho for x in cur) == theta.apply(prev)
    module = MAlphaModule(deep_ring, theta, exp_neg_e_theta(theta), rho, Fraction(0), max(4, len(witness.chain)))
    x = exp_theta_X(witness, module)
    assert x.coefficient(0) == v
    assert gamma_minus_one(x).is_zero()


def test_witness_chain_rejects(ring):
    one, zero = CycloElem.one(ring), CycloElem.zero(ring)
    theta = ChainMatrix.from_rows(ring, [[zero, one], [zero, zero]])
    witness = v_theta_rho_member(theta, make_rho(ring), (zero, one))
    assert not witness.accepted
    assert "rho" in witness.reason
    module = MAlphaModule.trivial(ring, make_rho(ring))
    with pytest.raises(WitnessError):
        exp_theta_X(witness, module)


def test_exp_theta_X_is_not_invariant_under_wrong_gamma(deep_ring, rng):
    rho = make_rho(deep_ring)
    theta, _ = rho_scaled_theta(deep_ring, rng, 2, 1, rho)
    v = (CycloElem.one(deep_ring), CycloElem.zero(deep_ring))
    witness = v_theta_rho_member(theta, rho, v)
    D = max(4, len(witness.chain))
    right = MAlphaModule(deep_ring, theta, exp_neg_e_theta(theta), rho, Fraction(0), D)
    wrong = MAlphaModule(deep_ring, theta, ChainMatrix.identity(deep_ring, 2), rho, Fraction(0), D)
    assert gamma_minus_one(exp_theta_X(witness, right)).is_zero()
    assert not gamma_minus_one(exp_theta_X(witness, wrong)).is_zero()
