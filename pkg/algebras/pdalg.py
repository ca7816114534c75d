"""
pdalg.py

절단된 divided-power 다항식 대수 A[ρY_1,…,ρY_d]_pd 와 Γ-작용, Higgs 장 Θ,
Faltings 확장 모델, 비교 사상 ι
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import product
from typing import Dict, Optional, Sequence, Tuple, Union

from rings.cyclo import (
    CycloElem, RingSpec, cached, divided_power, divided_power_epsilon, epsilon, zeta_power,
)
from rings.matrix import ChainMatrix

MultiIndex = Tuple[int, ...]


class PDError(ValueError):
    """PD 대수 파라미터 오류 또는 인덱스 범위 오류"""


def multi_indices(d: int, D: int) -> Tuple[MultiIndex, ...]:
    """|n| ≤ D 인 모든 다중 인덱스 (전체 차수, 사전식 순)"""
    found = [n for n in product(range(D + 1), repeat=d) if sum(n) <= D]
    return tuple(sorted(found, key=lambda n: (sum(n), n)))


@dataclass(frozen=True)
class PDAlgebraSpec:
    """
    A[ρY_1,…,ρY_d]_pd 의 |n| ≤ D 절단 (기저 ρ^{|n|}Y^{[n]})
    """

    ring: RingSpec
    d: int
    rho: CycloElem
    D: int

    def __post_init__(self):
        if self.d < 1 or self.D < 1:
            raise PDError(f"d and D must be >= 1 (got d={self.d}, D={self.D})")
        if self.rho.ring != self.ring:
            raise PDError("rho lives in a different ring")
        if self.rho.valuation < epsilon(self.ring).valuation:
            raise PDError(f"val(rho)={self.rho.valuation} is below val(zeta_p - 1)")

    @cached_property
    def indices(self) -> Tuple[MultiIndex, ...]:
        return multi_indices(self.d, self.D)

    @cached_property
    def index_of(self) -> Dict[MultiIndex, int]:
        return {n: t for t, n in enumerate(self.indices)}

    @property
    def rank(self) -> int:
        return len(self.indices)

    @cached_property
    def shift_coefficients(self) -> Tuple[CycloElem, ...]:
        """(ρε)^{[m]} = ρ^{[m]}ε^m, m = 0..D"""
        eps = epsilon(self.ring)
        return tuple(divided_power(self.rho, m) * (eps ** m) for m in range(self.D + 1))

    def check_variable(self, i: int):
        if not 0 <= i < self.d:
            raise PDError(f"variable index {i} out of range 0..{self.d - 1}")


@dataclass(frozen=True)
class PDElem:
    """PD 대수 원소 (spec.indices 순서의 계수 튜플)"""

    spec: PDAlgebraSpec
    coeffs: Tuple[CycloElem, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.rank:
            raise PDError(f"expected {self.spec.rank} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, spec: PDAlgebraSpec) -> "PDElem":
        z = CycloElem.zero(spec.ring)
        return cls(spec, (z,) * spec.rank)

    @classmethod
    def basis(cls, spec: PDAlgebraSpec, n: MultiIndex, c: Optional[CycloElem] = None) -> "PDElem":
        coeffs = list(cls.zero(spec).coeffs)
        coeffs[spec.index_of[tuple(n)]] = c if c is not None else CycloElem.one(spec.ring)
        return cls(spec, tuple(coeffs))

    @classmethod
    def one(cls, spec: PDAlgebraSpec) -> "PDElem":
        return cls.basis(spec, (0,) * spec.d)

    def coefficient(self, n: MultiIndex) -> CycloElem:
        return self.coeffs[self.spec.index_of[tuple(n)]]

    def items(self):
        return ((n, c) for n, c in zip(self.spec.indices, self.coeffs) if not c.is_zero())

    def degree(self) -> int:
        return max((sum(n) for n, _ in self.items()), default=-1)

    def truncate(self, D: int) -> "PDElem":
        z = CycloElem.zero(self.spec.ring)
        return PDElem(self.spec, tuple(c if sum(n) <= D else z for n, c in zip(self.spec.indices, self.coeffs)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "PDElem") -> "PDElem":
        _check_spec(self, other)
        return PDElem(self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PDElem") -> "PDElem":
        _check_spec(self, other)
        return PDElem(self.spec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "PDElem":
        return PDElem(self.spec, tuple(-a for a in self.coeffs))

    def scale(self, c: Union[CycloElem, int]) -> "PDElem":
        return PDElem(self.spec, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, PDElem):
            return pd_mul(self, other)
        return self.scale(other)

    def to_json(self) -> Dict:
        return {"coeffs": [{"index": list(n), "value": c.to_json()} for n, c in self.items()]}


def _check_spec(u: PDElem, v: PDElem):
    if u.spec != v.spec:
        raise PDError("PD elements belong to different algebras")


def pd_mul(u: PDElem, v: PDElem) -> PDElem:
    """ρ^{|m|}Y^{[m]}·ρ^{|n|}Y^{[n]} = ∏C(m_i+n_i, n_i)·ρ^{|m+n|}Y^{[m+n]} (|m+n| > D 항 제거)"""
    _check_spec(u, v)
    spec = u.spec
    acc = list(PDElem.zero(spec).coeffs)
    for m, a in u.items():
        for n, b in v.items():
            total = tuple(x + y for x, y in zip(m, n))
            if sum(total) > spec.D:
                continue
            binom = math.prod(math.comb(x + y, y) for x, y in zip(m, n))
            t = spec.index_of[total]
            acc[t] = acc[t] + a * b * binom
    return PDElem(spec, tuple(acc))


def _gamma_scalar(spec: PDAlgebraSpec, i: int, u: PDElem) -> PDElem:
    acc = list(PDElem.zero(spec).coeffs)
    shifts = spec.shift_coefficients
    for n, c in u.items():
        for j in range(n[i] + 1):
            target = n[:i] + (j,) + n[i + 1:]
            t = spec.index_of[target]
            acc[t] = acc[t] + c * shifts[n[i] - j]
    return PDElem(spec, tuple(acc))


def gamma_act(i: int, u: Union[PDElem, Sequence[PDElem]], alpha: Optional[Sequence[Fraction]] = None,
              rep: Optional[Sequence[ChainMatrix]] = None):
    """
    γ_i 의 작용 (Y_i ↦ Y_i + (ζ_p − 1), ζ^{α_i} 및 P_i 로 꼬임)

    Args:
        i: 변수 인덱스 (0 부터)
        u: PDElem 또는 (rep 가 있을 때) 성분 벡터
        alpha: 가중치 벡터 (기본 0)
        rep: P_1..P_d (선택)

    Returns:
        PDElem 또는 PDElem 튜플
    """
    if isinstance(u, PDElem):
        spec = u.spec
        spec.check_variable(i)
        out = _gamma_scalar(spec, i, u)
        if alpha is not None:
            out = out.scale(zeta_power(spec.ring, alpha[i]))
        if rep is not None:
            raise PDError("a representation needs a vector of PD elements")
        return out

    components = list(u)
    spec = components[0].spec
    spec.check_variable(i)
    moved = [_gamma_scalar(spec, i, c) for c in components]
    if alpha is not None:
        z = zeta_power(spec.ring, alpha[i])
        moved = [c.scale(z) for c in moved]
    if rep is None:
        return tuple(moved)
    P = rep[i]
    result = []
    for k in range(P.nrows):
        acc = PDElem.zero(spec)
        for l in range(P.ncols):
            if not P[k, l].is_zero():
                acc = acc + moved[l].scale(P[k, l])
        result.append(acc)
    return tuple(result)


def higgs_theta(u: PDElem) -> Tuple[PDElem, ...]:
    """Θ(u) 의 d 개 성분 (ρ^{|n|}Y^{[n]} ↦ ρ·ρ^{|n|-1}Y^{[n-1_i]})"""
    spec = u.spec
    out = []
    for i in range(spec.d):
        acc = list(PDElem.zero(spec).coeffs)
        for n, c in u.items():
            if n[i] == 0:
                continue
            t = spec.index_of[n[:i] + (n[i] - 1,) + n[i + 1:]]
            acc[t] = acc[t] + c * spec.rho
        out.append(PDElem(spec, tuple(acc)))
    return tuple(out)


# ----- 행렬 표현 (V ⊗ A^{≤D}, 인덱스 우선 순서) -----

@cached
def gamma_pd_matrix(spec: PDAlgebraSpec, i: int) -> ChainMatrix:
    """γ_i 의 A^{≤D} 위 행렬 (열 n → 행 n with n_i = j)"""
    spec.check_variable(i)
    zero = CycloElem.zero(spec.ring)
    grid = [[zero] * spec.rank for _ in range(spec.rank)]
    for col, n in enumerate(spec.indices):
        for j in range(n[i] + 1):
            row = spec.index_of[n[:i] + (j,) + n[i + 1:]]
            grid[row][col] = spec.shift_coefficients[n[i] - j]
    return ChainMatrix(spec.ring, spec.rank, spec.rank, tuple(tuple(r) for r in grid))


@cached
def theta_pd_matrix(spec: PDAlgebraSpec, i: int, scaled: bool = False) -> ChainMatrix:
    """
    ∂/∂Y_i 의 행렬 (계수 ρ; scaled 이면 ρΩ^1 기저에서의 계수 1)
    """
    spec.check_variable(i)
    zero = CycloElem.zero(spec.ring)
    coeff = CycloElem.one(spec.ring) if scaled else spec.rho
    grid = [[zero] * spec.rank for _ in range(spec.rank)]
    for col, n in enumerate(spec.indices):
        if n[i] == 0:
            continue
        row = spec.index_of[n[:i] + (n[i] - 1,) + n[i + 1:]]
        grid[row][col] = coeff
    return ChainMatrix(spec.ring, spec.rank, spec.rank, tuple(tuple(r) for r in grid))


def module_gamma_matrix(spec: PDAlgebraSpec, i: int, P: ChainMatrix,
                        alpha: Optional[Sequence[Fraction]] = None) -> ChainMatrix:
    """A^{≤D} ⊗ V 위의 γ_i = γ_i^{pd} ⊗ ζ^{α_i}P_i"""
    twist = P if alpha is None else P * zeta_power(spec.ring, alpha[i])
    return gamma_pd_matrix(spec, i).kron(twist)


def module_theta_matrix(spec: PDAlgebraSpec, i: int, theta: ChainMatrix) -> ChainMatrix:
    """H ⊗ A^{≤D} 위의 Θ_{H,i} = 1 ⊗ Θ_i + ∂/∂Y_i ⊗ 1"""
    eye_a = ChainMatrix.identity(spec.ring, spec.rank)
    eye_r = ChainMatrix.identity(spec.ring, theta.nrows)
    return eye_a.kron(theta) + theta_pd_matrix(spec, i).kron(eye_r)


# ----- 비교 사상 ι -----

@dataclass(frozen=True)
class PolyElem:
    """절단된 다항식 A[ρY]/(차수 > D) 의 원소 (기저 (ρY)^n)"""

    spec: PDAlgebraSpec
    coeffs: Tuple[CycloElem, ...]


def comparison_iota(u: PDElem) -> PolyElem:
    """(ρY)^{[n]} ↦ ∏ε^{[n_i]}·(ρY)^n"""
    spec = u.spec
    coeffs = []
    for n, c in zip(spec.indices, u.coeffs):
        factor = CycloElem.one(spec.ring)
        for k in n:
            factor = factor * divided_power_epsilon(spec.ring, k)
        coeffs.append(c * factor)
    return PolyElem(spec, tuple(coeffs))


def poly_theta(f: PolyElem) -> Tuple[PolyElem, ...]:
    """다항식 쪽 도함수 Θ̃_i ((ρY)^n ↦ n_i·ρ·(ρY)^{n-1_i})"""
    spec = f.spec
    out = []
    for i in range(spec.d):
        acc = [CycloElem.zero(spec.ring)] * spec.rank
        for n, c in zip(spec.indices, f.coeffs):
            if n[i] == 0 or c.is_zero():
                continue
            t = spec.index_of[n[:i] + (n[i] - 1,) + n[i + 1:]]
            acc[t] = acc[t] + c * spec.rho * n[i]
        out.append(PolyElem(spec, tuple(acc)))
    return tuple(out)


def iota_higgs_compatible(u: PDElem) -> bool:
    """ι(ε·Θ(u)) = Θ̃(ι(u))"""
    eps = epsilon(u.spec.ring)
    lhs = [comparison_iota(part.scale(eps)) for part in higgs_theta(u)]
    rhs = poly_theta(comparison_iota(u))
    return all(a.coeffs == b.coeffs for a, b in zip(lhs, rhs))


# ----- Faltings 모델 -----

@dataclass(frozen=True)
class FaltingsModelElem:
    """기저 (e, ρy_1, …, ρy_d) 에 대한 좌표"""

    ring: RingSpec
    coords: Tuple[CycloElem, ...]

    @property
    def d(self) -> int:
        return len(self.coords) - 1


def faltings_gamma(i: int, w: FaltingsModelElem, rho: CycloElem) -> FaltingsModelElem:
    """γ_i(e) = e, γ_i(ρy_j) = ρy_j + ρδ_{ij}e"""
    if not 0 <= i < w.d:
        raise PDError(f"variable index {i} out of range 0..{w.d - 1}")
    coords = list(w.coords)
    coords[0] = coords[0] + rho * w.coords[i + 1]
    return FaltingsModelElem(w.ring, tuple(coords))


def faltings_matrix(ring: RingSpec, d: int, i: int, rho: CycloElem) -> ChainMatrix:
    rows = [[CycloElem.one(ring) if a == b else CycloElem.zero(ring) for b in range(d + 1)] for a in range(d + 1)]
    rows[0][i + 1] = rho
    return ChainMatrix.from_rows(ring, rows)


# ----- PD 포락으로부터의 구성 -----

@dataclass(frozen=True)
class PeriodModel:
    """
    자유 PD 대수 Γ(Ae ⊕ ⊕Aρy_i) 와 e ↦ ζ_p − 1 몫 사상, 직접 구성과의 비교 데이터
    """

    pd: PDAlgebraSpec
    envelope_indices: Tuple[Tuple[int, MultiIndex], ...]
    quotient: ChainMatrix
    envelope_gamma: Tuple[ChainMatrix, ...]
    envelope_theta: Tuple[ChainMatrix, ...]
    gamma: Tuple[ChainMatrix, ...]
    theta: Tuple[ChainMatrix, ...]

    def gamma_compatible(self) -> bool:
        return all(self.quotient.matmul(g_env) == g.matmul(self.quotient)
                   for g_env, g in zip(self.envelope_gamma, self.gamma))

    def theta_compatible(self) -> bool:
        return all(self.quotient.matmul(t_env) == t.matmul(self.quotient)
                   for t_env, t in zip(self.envelope_theta, self.theta))

    def ideal_generator(self, k: int, n: MultiIndex) -> Tuple[CycloElem, ...]:
        """포락 기저에서의 (e − ε)^{[k]}·(ρy)^{[n]} = Σ_j (−ε)^{[k−j]}·e^{[j]}(ρy)^{[n]}"""
        ring = self.pd.ring
        minus_eps = -epsilon(ring)
        index = {kn: t for t, kn in enumerate(self.envelope_indices)}
        coords = [CycloElem.zero(ring)] * len(self.envelope_indices)
        for j in range(k + 1):
            coords[index[(j, tuple(n))]] = divided_power(minus_eps, k - j)
        return tuple(coords)

    def pd_ideal_vanishes(self) -> bool:
        """몫 사상이 (e − ε)^{[k]}·(ρy)^{[n]} (k ≥ 1, k + |n| ≤ D) 를 모두 죽임"""
        for k in range(1, self.pd.D + 1):
            for n in multi_indices(self.pd.d, self.pd.D - k):
                if not all(c.is_zero() for c in self.quotient.apply(self.ideal_generator(k, n))):
                    return False
        return True


def build_period_model(ring: RingSpec, d: int, rho: CycloElem, D: int) -> PeriodModel:
    """
    PD 포락을 통한 주기 대수 구성

    Args:
        ring: 기저 링
        d: 변수 수
        rho: ρ
        D: 전체 차수 절단

    Returns:
        PeriodModel
    """
    spec = PDAlgebraSpec(ring, d, rho, D)
    env = tuple((k, n) for k in range(D + 1) for n in multi_indices(d, D - k))
    env = tuple(sorted(env, key=lambda kn: (kn[0] + sum(kn[1]), kn)))
    env_index = {kn: t for t, kn in enumerate(env)}
    zero = CycloElem.zero(ring)

    q_grid = [[zero] * len(env) for _ in range(spec.rank)]
    for col, (k, n) in enumerate(env):
        q_grid[spec.index_of[n]][col] = divided_power_epsilon(ring, k)
    quotient = ChainMatrix(ring, spec.rank, len(env), tuple(tuple(r) for r in q_grid))

    rho_powers = [rho ** m for m in range(D + 1)]
    gammas, thetas = [], []
    for i in range(d):
        g_grid = [[zero] * len(env) for _ in range(len(env))]
        t_grid = [[zero] * len(env) for _ in range(len(env))]
        for col, (k, n) in enumerate(env):
            # γ_i((ρy_i)^{[n_i]}) = Σ_j (ρy_i)^{[j]}·ρ^{n_i-j}e^{[n_i-j]}, e^{[k]}e^{[l]} = C(k+l,k)e^{[k+l]}
            for j in range(n[i] + 1):
                m = n[i] - j
                row = env_index[(k + m, n[:i] + (j,) + n[i + 1:])]
                g_grid[row][col] = g_grid[row][col] + rho_powers[m] * math.comb(k + m, k)
            if n[i] > 0:
                row = env_index[(k, n[:i] + (n[i] - 1,) + n[i + 1:])]
                t_grid[row][col] = rho
        gammas.append(ChainMatrix(ring, len(env), len(env), tuple(tuple(r) for r in g_grid)))
        thetas.append(ChainMatrix(ring, len(env), len(env), tuple(tuple(r) for r in t_grid)))

    return PeriodModel(
        pd=spec,
        envelope_indices=env,
        quotient=quotient,
        envelope_gamma=tuple(gammas),
        envelope_theta=tuple(thetas),
        gamma=tuple(gamma_pd_matrix(spec, i) for i in range(d)),
        theta=tuple(theta_pd_matrix(spec, i) for i in range(d)),
    )


def random_pd_elem(spec: PDAlgebraSpec, rng: random.Random) -> PDElem:
    mod = spec.ring.modulus
    return PDElem(spec, tuple(
        CycloElem(spec.ring, tuple(rng.randrange(mod) for _ in range(spec.ring.e))) for _ in range(spec.rank)))
