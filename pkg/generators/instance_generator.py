"""
instance_generator.py

시드 고정 난수 인스턴스 생성기 (random.Random 만 사용)
"""

import math
import random
from typing import List, Optional, Tuple

from algebras.lognil import MAlphaElem, MAlphaModule, exp_neg_e_theta
from algebras.qr_machine import QRMachine, q_matrices
from correspondence.simpson import SmallHiggs, SmallRep, WeightSet
from rings.cyclo import CycloElem, RingSpec, as_weight, epsilon, uniformizer, vp_factorial
from rings.matrix import ChainMatrix, Vector


def _digits(valuation: int, ring: RingSpec) -> int:
    return -(-valuation // ring.e)


def working_guard(ring: RingSpec, D: int, rho: CycloElem) -> int:
    """
    보고 정밀도 위에 얹을 p-진 자릿수

    ρ 로의 두 번 나눗셈, D! 의 분모, 로그 급수의 정수 분모를 덮는다.
    """
    log_terms = 4 * ring.N * ring.e
    log_loss = int(math.log(log_terms, ring.p)) if log_terms >= ring.p else 0
    return 2 * _digits(rho.valuation, ring) + vp_factorial(ring.p, D) + log_loss + 2


def make_rho(ring: RingSpec, valuation: Optional[int] = None) -> CycloElem:
    """ρ = (ζ_p − 1)·π^k (기본 k = 0)"""
    eps = epsilon(ring)
    k = 0 if valuation is None else valuation - eps.valuation
    if k < 0:
        raise ValueError(f"rho valuation {valuation} is below val(zeta_p - 1) = {eps.valuation}")
    return eps * (uniformizer(ring) ** k)


def slack_for(ring: RingSpec, D: int, degree_guard: int) -> int:
    """ρ^{-1}Θ 의 여분 π-지수: (D + 1 − guard) 차 이상의 exp 항이 보고 링에서 0"""
    window = D + 1 - degree_guard
    if window < 1:
        raise ValueError(f"D = {D} leaves no room for degree guard {degree_guard}")
    return max(1, -(-ring.max_val // window))


def random_elem(ring: RingSpec, rng: random.Random, min_val: int = 0) -> CycloElem:
    value = CycloElem(ring, tuple(rng.randrange(ring.modulus) for _ in range(ring.e)))
    return value * (uniformizer(ring) ** min_val) if min_val else value


def random_matrix(ring: RingSpec, rng: random.Random, r: int, min_val: int = 0) -> ChainMatrix:
    return ChainMatrix.from_rows(ring, [[random_elem(ring, rng, min_val) for _ in range(r)] for _ in range(r)])


def _poly_in(B: ChainMatrix, rng: random.Random) -> ChainMatrix:
    # B 의 다항식끼리는 가환
    ring, r = B.ring, B.nrows
    acc = ChainMatrix.zeros(ring, r, r)
    power = ChainMatrix.identity(ring, r)
    for _ in range(r):
        acc = acc + power * CycloElem.from_int(ring, rng.randrange(ring.p))
        power = power.matmul(B)
    return acc


def commuting_family(ring: RingSpec, rng: random.Random, r: int, d: int, scale: CycloElem) -> List[ChainMatrix]:
    B = random_matrix(ring, rng, r)
    return [_poly_in(B, rng) * scale for _ in range(d)]


def random_small_higgs(reported: RingSpec, rng: random.Random, r: int, d: int, D: int,
                       rho_valuation: Optional[int] = None, degree_guard: Optional[int] = None) -> SmallHiggs:
    """
    Θ_k = ρπ^{slack}·f_k(B) (B 무작위, f_k 무작위 다항식) 인 작은 Higgs 가군

    작업 링 정밀도는 보고 정밀도 + working_guard.
    """
    guard = working_guard(reported, D, make_rho(reported, rho_valuation))
    ring = reported.boosted(guard)
    rho = make_rho(ring, rho_valuation)
    slack = slack_for(reported, D, d + 1 if degree_guard is None else degree_guard)
    scale = rho * (uniformizer(ring) ** slack)
    thetas = commuting_family(ring, rng, r, d, scale)
    return SmallHiggs(ring, tuple(thetas), rho, rho.valuation + slack, guard)


def random_small_rep(reported: RingSpec, rng: random.Random, r: int, d: int, D: int,
                     rho_valuation: Optional[int] = None) -> SmallRep:
    return SmallRep.from_higgs(random_small_higgs(reported, rng, r, d, D, rho_valuation))


def zero_rep(reported: RingSpec, r: int, d: int, D: int) -> SmallRep:
    rho = make_rho(reported)
    guard = working_guard(reported, D, rho)
    ring = reported.boosted(guard)
    eye = ChainMatrix.identity(ring, r)
    rho_w = make_rho(ring)
    return SmallRep(ring, tuple(eye for _ in range(d)), rho_w, rho_w.valuation + 1, guard)


# ----- lognil 인스턴스 -----

def random_module(ring: RingSpec, rng: random.Random, r: int, D: int, alpha=0,
                  rho_valuation: Optional[int] = None, slack: int = 1) -> MAlphaModule:
    """Θ = ρπ^{slack}·(무작위 행렬의 다항식), P = exp(−εΘ) 인 M_α(V)"""
    rho = make_rho(ring, rho_valuation)
    theta = commuting_family(ring, rng, r, 1, rho * uniformizer(ring) ** slack)[0]
    return MAlphaModule(ring, theta, exp_neg_e_theta(theta), rho, as_weight(alpha), D)


def random_m_elem(module: MAlphaModule, rng: random.Random, degree: Optional[int] = None) -> MAlphaElem:
    top = module.D if degree is None else degree
    return module.element([[random_elem(module.ring, rng) for _ in range(module.r)] for _ in range(top + 1)])


def small_case_instance(ring: RingSpec, rng: random.Random, r: int, exponent: int, D: int,
                        rho_valuation: Optional[int] = None) -> Tuple[MAlphaModule, ChainMatrix]:
    """
    Θ^d = ρ^dΘ' 를 만족하는 (M_0(V), Θ')

    d = 1: Θ = ρΘ'. d = 2: Θ = aN + ρ²b'I (N² = 0) 이면 Θ' = 2ab'N + ρ²b'²I.
    """
    rho = make_rho(ring, rho_valuation)
    pi = uniformizer(ring)
    if exponent == 1:
        theta_prime = commuting_family(ring, rng, r, 1, pi)[0]
        theta = theta_prime * rho
    elif exponent == 2:
        if r < 2:
            raise ValueError("the exponent-two family needs rank >= 2")
        N = _square_zero(ring, rng, r)
        a = random_elem(ring, rng, 1)
        b = random_elem(ring, rng)
        eye = ChainMatrix.identity(ring, r)
        theta = N * a + eye * (rho * rho * b)
        theta_prime = N * (a * b * 2) + eye * (rho * rho * b * b)
    else:
        raise ValueError(f"exponent must be 1 or 2 (got {exponent})")
    module = MAlphaModule(ring, theta, exp_neg_e_theta(theta), rho, as_weight(0), D)
    return module, theta_prime


def _square_zero(ring: RingSpec, rng: random.Random, r: int) -> ChainMatrix:
    """G·E_{0,r−1}·G^{-1} (G 는 단위 하삼각) 로 N² = 0"""
    zero = CycloElem.zero(ring)
    one = CycloElem.one(ring)
    rows = [[zero] * r for _ in range(r)]
    rows[0][r - 1] = random_elem(ring, rng)
    E = ChainMatrix.from_rows(ring, rows)
    G_rows = [[one if i == j else (random_elem(ring, rng) if j < i else zero) for j in range(r)] for i in range(r)]
    G = ChainMatrix.from_rows(ring, G_rows)
    return G.matmul(E).matmul(G.inverse())


def rho_scaled_theta(ring: RingSpec, rng: random.Random, r: int, n: int,
                     rho: CycloElem) -> Tuple[ChainMatrix, ChainMatrix]:
    """
    Θ = ρ·B, B = π(I + πC) 이면 Θ^n = ρ^n·Θ' (Θ' = B^n = π^n·단원 행렬)

    B 는 위상 멱영이라 증인 사슬 w_k = B^k v 는 유한 정밀도에서 0 에 도달한다.
    """
    pi = uniformizer(ring)
    B = (ChainMatrix.identity(ring, r) + random_matrix(ring, rng, r, 1)) * pi
    return B * rho, B ** n


def random_machine(ring: RingSpec, rng: random.Random, r: int, m_max: int,
                   rho_valuation: Optional[int] = None) -> QRMachine:
    """가환인 (U, Θ) 쌍: 둘 다 같은 B 의 다항식 (U 는 위상 멱영)"""
    rho = make_rho(ring, rho_valuation)
    pi = uniformizer(ring)
    B = random_matrix(ring, rng, r)
    U = _poly_in(B, rng) * pi
    theta = _poly_in(B, rng) * (rho * pi)
    machine = QRMachine(U, (ChainMatrix.identity(ring, r),), rho)
    return QRMachine(U, q_matrices(exp_neg_e_theta(theta), m_max + machine.K + 1), rho)


def random_sequence(ring: RingSpec, rng: random.Random, r: int, length: int) -> List[Vector]:
    return [tuple(random_elem(ring, rng) for _ in range(r)) for _ in range(length)]


def weight_set(ring: RingSpec, d: int, level: int = 1, limit: Optional[int] = None) -> WeightSet:
    return WeightSet.grid(ring.p, d, level, limit)
