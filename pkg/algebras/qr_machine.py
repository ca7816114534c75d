"""
qr_machine.py

Q_m 행렬, R/S_m 구성, R 의 고정점 유일성, 두 재귀식의 동치성,
작은 경우 H^1 소거 (f_V(x) = ρ^d ε y 의 명시적 해)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from algebras.lognil import (
    MAlphaElem, MAlphaModule, NonTerminatingSeriesError, exp_neg_e_theta, f_inverse, f_series, f_V,
)
from rings.cyclo import CycloElem, epsilon, epsilon_quotient
from rings.matrix import ChainMatrix, Vector, commute_pairwise, vec_add, vec_sub, zero_vector


def q_matrices(P: ChainMatrix, m_max: int) -> Tuple[ChainMatrix, ...]:
    """
    Q_0 = I, Q_m = Σ_{l=1}^m Σ_{m_1+…+m_l=m} ∏(ε^{[m_j+1]}/ε) (−1)^l P^l

    점화식 Q_m = −P Σ_{j=1}^m (ε^{[j+1]}/ε) Q_{m−j} 로 계산한다.
    """
    ring = P.ring
    Q = [ChainMatrix.identity(ring, P.nrows)]
    for m in range(1, m_max + 1):
        acc = ChainMatrix.zeros(ring, P.nrows, P.ncols)
        for j in range(1, m + 1):
            c = epsilon_quotient(ring, j)
            if not c.is_zero():
                acc = acc + Q[m - j] * c
        Q.append(-(P.matmul(acc)))
    return tuple(Q)


def _compositions(m: int):
    for l in range(1, m + 1):
        for parts in product(range(1, m + 1), repeat=l):
            if sum(parts) == m:
                yield parts


def q_matrix_by_compositions(P: ChainMatrix, m: int) -> ChainMatrix:
    """Q_m 을 합성 (composition) 합으로 직접 계산 (작은 m 의 교차 검증용)"""
    ring = P.ring
    if m == 0:
        return ChainMatrix.identity(ring, P.nrows)
    acc = ChainMatrix.zeros(ring, P.nrows, P.ncols)
    for parts in _compositions(m):
        coeff = CycloElem.one(ring)
        for part in parts:
            coeff = coeff * epsilon_quotient(ring, part)
        term = (-P) ** len(parts)
        acc = acc + term * coeff
    return acc


def nilpotency_index(U: ChainMatrix) -> int:
    """U^K = 0 인 최소 K"""
    bound = U.nrows * U.ring.max_val + 1
    power = ChainMatrix.identity(U.ring, U.nrows)
    for k in range(bound + 1):
        if power.is_zero():
            return k
        power = power.matmul(U)
    raise NonTerminatingSeriesError(f"U^k does not vanish by k = {bound}")


@dataclass(frozen=True)
class Construction:
    """R = lim R_k, S_m = lim S_{m,k} (m = 1..m_max)"""

    R: ChainMatrix
    S: Tuple[ChainMatrix, ...]

    def S_m(self, m: int) -> ChainMatrix:
        return self.S[m - 1]


@dataclass(frozen=True)
class RecursionVerdict:
    """두 재귀식 각각의 성립 여부와 실패한 첨자"""

    technique: bool
    direct: bool
    failures: Tuple[Tuple[str, int], ...] = ()

    @property
    def equivalent(self) -> bool:
        return self.technique == self.direct

    def to_json(self) -> Dict[str, Any]:
        return {
            "technique": self.technique,
            "direct": self.direct,
            "equivalent": self.equivalent,
            "failures": [list(f) for f in self.failures],
        }


def _at(seq: Sequence[Vector], n: int, ring, r: int) -> Vector:
    return tuple(seq[n]) if 0 <= n < len(seq) else zero_vector(ring, r)


@dataclass(frozen=True)
class QRMachine:
    """
    가환 행렬 U (멱영) 와 Q_0 = I, Q_1, … 위의 R/S_m 계산기

    Q 는 필요한 첨자까지 미리 계산되어 있어야 한다.
    """

    U: ChainMatrix
    Q: Tuple[ChainMatrix, ...]
    rho: CycloElem

    def __post_init__(self):
        if not self.Q or not self.Q[0].is_identity():
            raise ValueError("Q_0 must be the identity")
        if not commute_pairwise((self.U,) + tuple(self.Q[1:])):
            raise ValueError("U and the Q_m do not commute")

    @classmethod
    def for_higgs(cls, theta: ChainMatrix, rho: CycloElem, m_max: int = 0) -> "QRMachine":
        """U = −ΘF(Θ), Q_m 은 P = exp(−εΘ) 에서 (이때 R = −F(Θ)^{-1})"""
        U = -(theta.matmul(f_series(theta)))
        K = nilpotency_index(U)
        return cls(U, q_matrices(exp_neg_e_theta(theta), m_max + K + 1), rho)

    @property
    def ring(self):
        return self.U.ring

    @cached_property
    def K(self) -> int:
        return nilpotency_index(self.U)

    def _need(self, m: int):
        if m >= len(self.Q):
            raise ValueError(f"Q_{m} is required but only Q_0..Q_{len(self.Q) - 1} are known")

    def construct(self, m_max: int = 1) -> Construction:
        """
        R_0 = I, S_{m,0} = 0, Q_{m,0} = Q_m
        R_{k+1} = R_k + U^{k+1}Q_{1,k}, S_{m,k+1} = S_{m,k} + U^kQ_{m,k}
        Q_{m,k+1} = Σ_{l=1}^{m+1} Q_{l,k}Q_{m+1−l}
        """
        K = self.K
        self._need(m_max + K)
        ring, r = self.ring, self.U.nrows
        Qk = list(self.Q[1:m_max + K + 1])
        R = ChainMatrix.identity(ring, r)
        S = [ChainMatrix.zeros(ring, r, r) for _ in range(m_max)]
        Upow = ChainMatrix.identity(ring, r)
        for _ in range(K):
            for m in range(1, m_max + 1):
                S[m - 1] = S[m - 1] + Upow.matmul(Qk[m - 1])
            R = R + Upow.matmul(self.U).matmul(Qk[0])
            Qk = [
                sum((Qk[l - 1].matmul(self.Q[m + 1 - l]) for l in range(1, m + 1)), Qk[m])
                for m in range(1, len(Qk))
            ]
            Upow = Upow.matmul(self.U)
        return Construction(R, tuple(S))

    @cached_property
    def R(self) -> ChainMatrix:
        return self.construct(1).R

    def _f(self, X: ChainMatrix) -> ChainMatrix:
        ring, r = self.ring, self.U.nrows
        base = self.U.matmul(ChainMatrix.identity(ring, r) + X)
        acc = ChainMatrix.zeros(ring, r, r)
        power = base
        for m in range(1, self.K):
            self._need(m)
            acc = acc + self.Q[m].matmul(power)
            power = power.matmul(base)
        return acc

    def fixed_point(self, start: Optional[ChainMatrix] = None) -> ChainMatrix:
        """X ↦ Σ_{m≥1} Q_m(U(I+X))^m 의 고정점 X 에 대해 R = I + X"""
        ring, r = self.ring, self.U.nrows
        X = ChainMatrix.zeros(ring, r, r) if start is None else start
        for _ in range(self.K + 2):
            Y = self._f(X)
            if Y == X:
                return ChainMatrix.identity(ring, r) + X
            X = Y
        raise NonTerminatingSeriesError("fixed-point iteration did not stabilise")

    def check_identity(self, R: ChainMatrix) -> bool:
        """R = Σ_{m≥0} Q_m (RU)^m"""
        base = R.matmul(self.U)
        acc = ChainMatrix.zeros(self.ring, R.nrows, R.ncols)
        power = ChainMatrix.identity(self.ring, R.nrows)
        for m in range(self.K):
            self._need(m)
            acc = acc + self.Q[m].matmul(power)
            power = power.matmul(base)
        return acc == R

    # ----- 재귀식 -----

    def _direct_rhs(self, a, b, n: int, r: int) -> Vector:
        ring = self.ring
        acc = vec_add(_at(a, n + 1, ring, r), self.U.apply(_at(b, n, ring, r)))
        tail = zero_vector(ring, r)
        for m in range(1, len(b) - n):
            self._need(m)
            moved = self.Q[m].apply(_at(b, n + m, ring, r))
            tail = vec_add(tail, tuple(x * (self.rho ** m) for x in moved))
        return vec_add(acc, self.U.apply(tail))

    def _technique_tail(self, S: Construction, a, n: int, r: int) -> Vector:
        ring = self.ring
        tail = zero_vector(ring, r)
        for m in range(2, len(a) - n):
            moved = S.S_m(m).apply(_at(a, n + m, ring, r))
            tail = vec_add(tail, tuple(x * (self.rho ** (m - 1)) for x in moved))
        return self.U.apply(tail)

    def recursion_check(self, a: Sequence[Vector], b: Sequence[Vector]) -> RecursionVerdict:
        """
        (1) ρb_{n+1} = RUb_n + Ra_{n+1} + UΣ_{m≥2} S_m ρ^{m−1} a_{n+m}
        (2) ρb_{n+1} = a_{n+1} + Ub_n + UΣ_{m≥1} ρ^m Q_m b_{n+m}

        a 는 a_0 (무시), a_1, … , b 는 b_0, b_1, … 이고 범위 밖은 0.
        두 식 모두 0 이 아닌 항이 남는 모든 n 에서 검사한다.
        """
        ring, r = self.ring, self.U.nrows
        top = max(len(a), len(b))
        S = self.construct(max(top, 1))
        RU = S.R.matmul(self.U)
        failures: List[Tuple[str, int]] = []
        for n in range(top):
            lhs = tuple(x * self.rho for x in _at(b, n + 1, ring, r))
            rhs1 = vec_add(vec_add(RU.apply(_at(b, n, ring, r)), S.R.apply(_at(a, n + 1, ring, r))),
                           self._technique_tail(S, a, n, r))
            if lhs != rhs1:
                failures.append(("technique", n))
            if lhs != self._direct_rhs(a, b, n, r):
                failures.append(("direct", n))
        names = {kind for kind, _ in failures}
        return RecursionVerdict("technique" not in names, "direct" not in names, tuple(failures))

    def solve_a_direct(self, b: Sequence[Vector]) -> List[Vector]:
        """(2) 가 모든 n 에서 성립하도록 a 를 정함 (a_0 = 0)"""
        ring, r = self.ring, self.U.nrows
        a = [zero_vector(ring, r)]
        for n in range(len(b)):
            rho_b = tuple(x * self.rho for x in _at(b, n + 1, ring, r))
            rest = self._direct_rhs([zero_vector(ring, r)] * (n + 2), b, n, r)
            a.append(vec_sub(rho_b, rest))
        return a

    def solve_a_technique(self, b: Sequence[Vector]) -> List[Vector]:
        """(1) 이 모든 n 에서 성립하도록 a 를 위에서부터 정함"""
        ring, r = self.ring, self.U.nrows
        L = len(b)
        S = self.construct(L + 1)
        R_inv = S.R.inverse()
        RU = S.R.matmul(self.U)
        a = [zero_vector(ring, r) for _ in range(L + 1)]
        for n in range(L - 1, -1, -1):
            rhs = tuple(x * self.rho for x in _at(b, n + 1, ring, r))
            rhs = vec_sub(rhs, RU.apply(_at(b, n, ring, r)))
            rhs = vec_sub(rhs, self._technique_tail(S, a, n, r))
            a[n + 1] = R_inv.apply(rhs)
        return a


def r_fixed_point(machine: QRMachine, start: Optional[ChainMatrix] = None) -> ChainMatrix:
    return machine.fixed_point(start)


def recursion_equivalence_check(machine: QRMachine, a: Sequence[Vector], b: Sequence[Vector]) -> RecursionVerdict:
    """두 재귀식이 주어진 수열에서 동시에 성립하는지 (서로 동치) 확인"""
    return machine.recursion_check(a, b)


# ----- 작은 경우 -----

@dataclass(frozen=True)
class SmallCasePreimage:
    """f_V(x) = ρ^d ε y 의 해 x 와 검증 결과"""

    x: MAlphaElem
    top: int
    holds: bool

    def to_json(self) -> Dict[str, Any]:
        return {"top": self.top, "holds": self.holds}


def _op(theta: ChainMatrix, theta_prime: ChainMatrix, rho: CycloElem, d: int, k: int) -> ChainMatrix:
    # (ρ^{-1}Θ)^k ρ^{d-1}, Θ^d = ρ^dΘ'
    q, r = divmod(k, d)
    return (theta ** r).matmul(theta_prime ** q) * (rho ** (d - 1 - r))


def small_case_preimage(y: MAlphaElem, d: int, theta_prime: ChainMatrix) -> SmallCasePreimage:
    """
    Θ^d = ρ^dΘ' 일 때 f_V(x) = ρ^d ε y 인 x 구성

    b_0 = ρ^{d−1}c_0,
    b_{n+1} = (ρ^{-1}Θ)^{n+1}ρ^{d−1}c_0
              + Σ_{i=0}^n (ρ^{-1}Θ)^i ρ^{d−1}(R c_{n−i+1} + UΣ_{m≥2} S_m ρ^{m−1} c_{n−i+m}),
    R = −F(Θ)^{-1}, U = −ΘF(Θ). (ρ^{-1}Θ)^k ρ^{d−1} 은 Θ' 로 나눗셈 없이 계산한다.

    Args:
        y: M_0(V) 의 원소 (차수 ≤ D)
        d: 지수
        theta_prime: Θ'

    Returns:
        SmallCasePreimage
    """
    module = y.module
    theta, rho = module.theta, module.rho
    ring, r, D = module.ring, module.r, module.D
    if d < 1:
        raise ValueError("d must be >= 1")
    if theta ** d != theta_prime * (rho ** d):
        raise ValueError("theta^d != rho^d * theta'")

    machine = QRMachine.for_higgs(theta, rho, D + 2)
    S = machine.construct(D + 2)
    R = -f_inverse(module.F)

    bound = r * ring.max_val * d + d
    ops: List[ChainMatrix] = []
    K0 = None
    k = 0
    while K0 is None:
        if k > bound:
            raise NonTerminatingSeriesError("(rho^-1 theta)^k does not vanish")
        while len(ops) < k + d:
            ops.append(_op(theta, theta_prime, rho, d, len(ops)))
        if all(ops[j].is_zero() for j in range(k, k + d)):
            K0 = k
        k += 1
    top = D + K0

    c = y.coeffs

    def inner(j: int) -> Vector:
        acc = R.apply(_at(c, j, ring, r))
        tail = zero_vector(ring, r)
        for m in range(2, D - j + 2):
            moved = S.S_m(m).apply(_at(c, j - 1 + m, ring, r))
            tail = vec_add(tail, tuple(x * (rho ** (m - 1)) for x in moved))
        return vec_add(acc, machine.U.apply(tail))

    inners = [None] + [inner(j) for j in range(1, D + 1)]

    def op(k: int) -> ChainMatrix:
        return ops[k] if k < len(ops) else ChainMatrix.zeros(ring, r, r)

    b = [op(0).apply(c[0])]
    for n1 in range(1, top + 1):
        acc = op(n1).apply(c[0])
        for j in range(1, min(n1, D) + 1):
            acc = vec_add(acc, op(n1 - j).apply(inners[j]))
        b.append(acc)

    x = MAlphaModule(ring, theta, module.P, rho, module.alpha, top).element(b)
    image = f_V(x)
    target = y.padded(image.module).scale((rho ** d) * epsilon(ring))
    return SmallCasePreimage(x, top, image == target)
