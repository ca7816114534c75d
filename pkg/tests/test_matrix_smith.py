"""
ChainMatrix 와 Smith 표준형 테스트
"""

import pytest

from analyzers.smith import invariant_factors, smith_normal_form
from generators.instance_generator import random_matrix
from oracles import brute_image
from rings.cyclo import CycloElem, uniformizer
from rings.matrix import ChainMatrix, MatrixShapeError, NotInvertibleError, commute_pairwise


def test_identity_and_shapes(ring, rng):
    A = random_matrix(ring, rng, 3)
    eye = ChainMatrix.identity(ring, 3)
    assert eye.matmul(A) == A == A.matmul(eye)
    assert (A @ eye) == A
    with pytest.raises(MatrixShapeError):
        A.matmul(ChainMatrix.zeros(ring, 2, 2))
    with pytest.raises(MatrixShapeError):
        A + ChainMatrix.zeros(ring, 3, 2)


def test_kron_and_transpose(ring, rng):
    A = random_matrix(ring, rng, 2)
    B = random_matrix(ring, rng, 3)
    K = A.kron(B)
    assert K.shape == (6, 6)
    assert K[4, 1] == A[1, 0] * B[1, 1]
    assert K.transpose() == A.transpose().kron(B.transpose())
    C, D = random_matrix(ring, rng, 2), random_matrix(ring, rng, 3)
    assert A.kron(B).matmul(C.kron(D)) == A.matmul(C).kron(B.matmul(D))


def test_inverse(ring, rng):
    pi = uniformizer(ring)
    A = ChainMatrix.identity(ring, 3) + random_matrix(ring, rng, 3, 1)
    assert A.matmul(A.inverse()).is_identity()
    assert (A ** -2).matmul(A ** 2).is_identity()
    with pytest.raises(NotInvertibleError):
        ChainMatrix.scalar(ring, 2, pi).inverse()


def test_min_valuation_and_divide(ring):
    pi = uniformizer(ring)
    A = ChainMatrix.from_rows(ring, [[pi ** 2, pi ** 3], [0, pi ** 2]])
    assert A.min_valuation() == 2
    Q = A.divide_scalar(pi ** 2)
    assert Q * (pi ** 2) == A
    assert ChainMatrix.zeros(ring, 2, 2).min_valuation() == ring.max_val


def test_commute_pairwise(ring, rng):
    B = random_matrix(ring, rng, 2)
    assert commute_pairwise([B, B.matmul(B), ChainMatrix.identity(ring, 2)])
    E = ChainMatrix.from_rows(ring, [[0, 1], [0, 0]])
    assert not commute_pairwise([E, E.transpose()])


def test_json_round_trip(ring, rng):
    A = random_matrix(ring, rng, 2)
    assert ChainMatrix.from_json(A.to_json()) == A


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_smith_form_verifies(deep_ring, rng, shape):
    m, n = shape
    pi = uniformizer(deep_ring)
    rows = [[random_matrix(deep_ring, rng, 1, rng.randrange(3))[0, 0] for _ in range(n)] for _ in range(m)]
    M = ChainMatrix.from_rows(deep_ring, rows)
    form = smith_normal_form(M)
    assert form.verify(M)
    assert list(form.exponents) == sorted(form.exponents)
    for t, k in enumerate(form.exponents):
        if k < deep_ring.max_val:
            assert form.D[t, t] == pi ** k


def test_smith_known_factors(ring):
    pi = uniformizer(ring)
    M = ChainMatrix.from_rows(ring, [[pi ** 3, pi], [pi, 0]])
    assert invariant_factors(M) == [1, 1]
    assert invariant_factors(ChainMatrix.zeros(ring, 2, 2)) == []
    assert invariant_factors(ChainMatrix.diagonal(ring, [pi ** 2, CycloElem.one(ring)])) == [0, 2]


@pytest.mark.parametrize("trial", range(6))
def test_image_size_matches_brute_force(tiny_ring, trial):
    import random

    local = random.Random(trial)
    n = 2 if trial % 2 else 3
    M = ChainMatrix.from_rows(tiny_ring, [[random_matrix(tiny_ring, local, 1)[0, 0] for _ in range(n)]
                                          for _ in range(2)])
    if trial == 0:
        M = M * uniformizer(tiny_ring)
    factors = invariant_factors(M)
    expected = tiny_ring.p ** sum(tiny_ring.max_val - k for k in factors)
    assert len(brute_image(M)) == expected
