"""
Q/R/S 구성과 재귀식 테스트
"""

import pytest

from algebras.lognil import NonTerminatingSeriesError, f_inverse, f_series
from algebras.qr_machine import (
    QRMachine, nilpotency_index, q_matrices, q_matrix_by_compositions, r_fixed_point,
    recursion_equivalence_check, small_case_preimage,
)
from generators.instance_generator import (
    commuting_family, make_rho, random_m_elem, random_machine, random_matrix, random_sequence,
    small_case_instance,
)
from rings.cyclo import CycloElem, epsilon_quotient, uniformizer
from rings.matrix import ChainMatrix


def _shift(ring):
    zero, one = CycloElem.zero(ring), CycloElem.one(ring)
    return ChainMatrix.from_rows(ring, [[zero, one], [zero, zero]])


def test_nilpotency_index(ring):
    assert nilpotency_index(_shift(ring)) == 2
    assert nilpotency_index(ChainMatrix.zeros(ring, 2, 2)) == 1
    with pytest.raises(NonTerminatingSeriesError):
        nilpotency_index(ChainMatrix.identity(ring, 2))


def test_q_matrices_first_terms(ring, rng):
    P = ChainMatrix.identity(ring, 2) + commuting_family(ring, rng, 2, 1, uniformizer(ring))[0]
    Q = q_matrices(P, 4)
    assert Q[0].is_identity()
    assert Q[1] == -(P * epsilon_quotient(ring, 1))
    for m in range(5):
        assert Q[m] == q_matrix_by_compositions(P, m)


def test_machine_validation(ring):
    N = _shift(ring)
    with pytest.raises(ValueError):
        QRMachine(N, (N,), make_rho(ring))
    other = ChainMatrix.from_rows(ring, [[CycloElem.zero(ring)] * 2, [CycloElem.one(ring), CycloElem.zero(ring)]])
    with pytest.raises(ValueError):
        QRMachine(N, (ChainMatrix.identity(ring, 2), other), make_rho(ring))


def test_missing_q_is_reported(ring):
    machine = QRMachine(_shift(ring) * uniformizer(ring), (ChainMatrix.identity(ring, 2),), make_rho(ring))
    with pytest.raises(ValueError, match="Q_"):
        machine.construct(1)


def test_construction_satisfies_identity(ring, rng):
    machine = random_machine(ring, rng, 2, 3)
    construction = machine.construct(3)
    assert machine.check_identity(construction.R)
    assert machine.R == construction.R
    assert not machine.check_identity(construction.R + ChainMatrix.identity(ring, 2))


def test_fixed_point_is_unique(ring, rng):
    machine = random_machine(ring, rng, 2, 2)
    R = machine.R
    assert r_fixed_point(machine) == R
    for _ in range(3):
        assert machine.fixed_point(random_matrix(ring, rng, 2, 1)) == R


def test_higgs_machine_inverts_f(deep_ring, rng):
    rho = make_rho(deep_ring)
    theta = commuting_family(deep_ring, rng, 2, 1, rho * uniformizer(deep_ring))[0]
    machine = QRMachine.for_higgs(theta, rho, 2)
    assert machine.R == -f_inverse(f_series(theta))


def test_recursions_are_equivalent(ring, rng):
    machine = random_machine(ring, rng, 2, 2)
    b = random_sequence(ring, rng, 2, 4)

    a = machine.solve_a_direct(b)
    verdict = recursion_equivalence_check(machine, a, b)
    assert verdict.direct and verdict.technique and verdict.equivalent

    a = machine.solve_a_technique(b)
    verdict = machine.recursion_check(a, b)
    assert verdict.direct and verdict.technique
    assert verdict.to_json()["failures"] == []


def test_recursions_fail_together(ring, rng):
    machine = random_machine(ring, rng, 2, 2)
    b = random_sequence(ring, rng, 2, 3)
    a = machine.solve_a_direct(b)
    a[1] = tuple(x + CycloElem.one(ring) for x in a[1])
    verdict = machine.recursion_check(a, b)
    assert not verdict.direct
    assert not verdict.technique
    assert verdict.equivalent


@pytest.mark.parametrize("exponent,r", [(1, 1), (1, 2), (2, 2)])
def test_small_case_preimage(ring, rng, exponent, r):
    module, theta_prime = small_case_instance(ring, rng, r, exponent, 3)
    result = small_case_preimage(random_m_elem(module, rng), exponent, theta_prime)
    assert result.holds
    assert result.top >= module.D
    assert result.to_json()["holds"] is True


def test_small_case_rejects_wrong_power(ring, rng):
    module, theta_prime = small_case_instance(ring, rng, 2, 1, 3)
    y = random_m_elem(module, rng)
    with pytest.raises(ValueError):
        small_case_preimage(y, 0, theta_prime)
    with pytest.raises(ValueError):
        small_case_preimage(y, 1, theta_prime + ChainMatrix.identity(ring, 2))
