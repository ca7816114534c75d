"""
국소 Simpson 대응, Künneth, Lη, 가중치 분해 테스트
"""

from fractions import Fraction

import pytest

from algebras.lognil import LogNilpRep
from algebras.pdalg import PDAlgebraSpec
from correspondence.simpson import (
    SmallHiggs, SmallnessError, SmallRep, WeightSet, _field_matches, exp_vectors, higgs_resolution_check,
    higgs_to_rep, isotypic_cohomology, kunneth_combine, kunneth_pd_cohomology, local_leta_check, rep_to_higgs,
    round_trip, tensor_dual_check, wang_normalization,
)
from generators.instance_generator import (
    make_rho, random_small_higgs, random_small_rep, weight_set, zero_rep,
)
from rings.cyclo import CycloElem, make_ring, uniformizer
from rings.matrix import ChainMatrix


def test_small_rep_validation(ring):
    rho = make_rho(ring)
    eye = ChainMatrix.identity(ring, 2)
    with pytest.raises(SmallnessError):
        SmallRep(ring, (), rho, 2)
    with pytest.raises(SmallnessError):
        SmallRep(ring, (eye * CycloElem.from_int(ring, 2),), rho, 2)
    zero, pi = CycloElem.zero(ring), uniformizer(ring)
    a = ChainMatrix.from_rows(ring, [[zero, pi ** 3], [zero, zero]]) + eye
    b = ChainMatrix.from_rows(ring, [[zero, zero], [pi ** 3, zero]]) + eye
    with pytest.raises(SmallnessError, match="commute"):
        SmallRep(ring, (a, b), rho, 2)


def test_small_higgs_needs_room_below_rho(ring):
    rho = make_rho(ring)
    theta = ChainMatrix.identity(ring, 1) * rho
    with pytest.raises(SmallnessError):
        SmallHiggs(ring, (theta,), rho, rho.valuation)


def test_rep_to_higgs_recovers_fields(ring, rng):
    H = random_small_higgs(ring, rng, 2, 1, 4)
    recovered, cert = rep_to_higgs(SmallRep.from_higgs(H), 4)
    target = H.reported
    for a, b in zip(recovered.thetas, H.thetas):
        assert a.reduce_to(target) == b.reduce_to(target)
    assert cert.passed


@pytest.mark.parametrize("r,d", [(1, 1), (2, 1), (1, 2)])
def test_round_trip(ring, rng, r, d):
    V = random_small_rep(ring, rng, r, d, 4)
    result = round_trip(V, 4)
    assert result["same_P"]
    assert result["passed"]
    assert result["rep_certificate"]["annihilated"]


def test_round_trip_of_trivial_rep(ring):
    V = zero_rep(ring, 2, 1, 4)
    H, _ = rep_to_higgs(V, certify=False)
    assert all(t.is_zero() for t in H.thetas)
    assert round_trip(V, 4)["passed"]


def test_higgs_certificate(ring, rng):
    H = random_small_higgs(ring, rng, 2, 1, 4)
    V, cert = higgs_to_rep(H, 4)
    assert V.P == H.P
    assert cert.passed
    assert cert.to_json()["spans"] is True


def test_tensor_and_dual(ring, rng):
    V = random_small_rep(ring, rng, 2, 1, 4)
    W = random_small_rep(ring, rng, 1, 1, 4)
    verdict = tensor_dual_check(V, W)
    assert verdict.passed, verdict.to_json()


def test_wang_normalization(ring, rng):
    H = random_small_higgs(ring, rng, 2, 1, 4)
    eye = ChainMatrix.identity(H.ring, H.rank)
    for P, F, n in zip(H.P, H.F, wang_normalization(H)):
        assert P - eye == n.matmul(F)


def test_kunneth_combine_by_hand():
    # 두 O/π 의 텐서와 Tor
    assert kunneth_combine([[], [1]], [[], [1]], 4) == [[], [1], [1]]
    assert kunneth_combine([[4], []], [[4], [1]], 4) == [[4], [1], []]


@pytest.mark.parametrize("d", [1, 2])
def test_kunneth_matches_direct_computation(ring, d):
    report = kunneth_pd_cohomology(ring, d, make_rho(ring), 3)
    assert report.matches, report.to_json()
    assert len(report.direct) == d + 1
    assert report.exterior_matches, report.to_json()
    assert report.exterior_free_ranks[0] >= 1


@pytest.mark.parametrize("d,D", [(1, 3), (2, 3), (3, 2)])
def test_higgs_resolution_is_exact(ring, d, D):
    verdict = higgs_resolution_check(ring, d, D)
    assert verdict.exact, verdict.to_json()


@pytest.mark.parametrize("lam_val", [0, 1])
def test_local_leta(ring, rng, lam_val):
    V = random_small_rep(ring, rng, 2, 1, 4)
    verdict = local_leta_check(V, uniformizer(V.ring) ** lam_val)
    assert verdict.agrees, verdict.to_json()
    assert verdict.h0_torsion_free


def test_local_leta_two_variables(ring, rng):
    V = random_small_rep(ring, rng, 1, 2, 4)
    assert local_leta_check(V, CycloElem.one(V.ring)).passed


def test_local_leta_rejects_large_lambda(ring, rng):
    V = random_small_rep(ring, rng, 1, 1, 4)
    with pytest.raises(ValueError):
        local_leta_check(V, uniformizer(V.ring) ** (V.rho.valuation + 1))
    with pytest.raises(ValueError):
        local_leta_check(V, CycloElem.zero(V.ring))


def test_weight_set():
    ws = WeightSet(1, ((Fraction(1, 3),), (Fraction(4, 3),)))
    assert ws.weights == ((Fraction(0),), (Fraction(1, 3),))
    assert len(WeightSet.grid(3, 2).weights) == 9
    assert len(WeightSet.grid(3, 1, limit=2).weights) == 2
    with pytest.raises(ValueError):
        WeightSet(2, ((Fraction(1, 3),),))


def test_weight_level_is_checked(ring):
    with pytest.raises(ValueError):
        WeightSet(1, ((Fraction(1, 9),),)).check_level(ring)
    WeightSet(1, ((Fraction(1, 9),),)).check_level(make_ring(3, 2, 2))


def test_isotypic_pieces_are_killed(ring, rng):
    V = random_small_rep(ring, rng, 2, 1, 4)
    report = isotypic_cohomology(V, weight_set(V.reported, 1))
    assert report.passed, report.to_json()
    assert len(report.pieces) == 3
    for alpha, hs, _ in report.pieces:
        if alpha != (Fraction(0),):
            assert hs[0] == ()


def test_higgs_certificate_checks_the_field(deep_ring):
    rho = make_rho(deep_ring)
    theta = ChainMatrix.identity(deep_ring, 1) * (rho * uniformizer(deep_ring))
    H = LogNilpRep(deep_ring, (theta,), rho, 2, 1)
    _, cert = higgs_to_rep(H, 3)
    assert cert.annihilated
    assert cert.field_matches

    target = H.reported
    spec = PDAlgebraSpec(target, 1, rho.reduce_to(target), 3)
    vectors = exp_vectors(H, spec, sign=-1)
    mask = [sum(n) <= 2 for n in spec.indices]
    thetas = [theta.reduce_to(target)]
    assert _field_matches(spec, vectors, thetas, mask, sign=-1)
    assert not _field_matches(spec, vectors, thetas, mask, sign=1)
