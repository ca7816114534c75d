"""
lognil.py

로그 멱영 표현, divided-power 행렬 지수와 로그, f_V/g_V 연산자,
V_{Θ/ρ} 증인 사슬, M_α(V) 의 Γ-코호몰로지
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebras.pdalg import PDAlgebraSpec, module_gamma_matrix
from analyzers.complexes import (
    FreeComplex, ModulePresentation, capped_factors, cohomology, stable_precision,
)
from rings.cyclo import (
    CycloElem, DivisionError, RingSpec, as_weight, cached, divided_power_epsilon, divided_power_quotient,
    epsilon, epsilon_quotient, exact_div, zeta_power,
)
from rings.matrix import ChainMatrix, NotInvertibleError, Vector, commute_pairwise, vec_add, zero_vector


class NonTerminatingSeriesError(ArithmeticError):
    """급수가 유한 링에서 정해진 한계 안에 끝나지 않음"""


class PrecisionError(ArithmeticError):
    """나눗셈 후 신뢰 정밀도가 요청한 정밀도보다 낮음"""


class WitnessError(ValueError):
    """V_{Θ/ρ} 증인 사슬이 없음"""


class RepresentationError(ValueError):
    """Θ_i 가 가환이 아니거나 크기/하한 조건 위반"""


# ----- 급수 -----

def _series_bound(theta: ChainMatrix) -> int:
    return theta.nrows * theta.ring.max_val + 1


def _power_series(theta: ChainMatrix, coeff: Callable[[int], CycloElem], start: int = 0) -> ChainMatrix:
    """Σ_{n≥start} coeff(n)·Θ^n (Θ^n = 0 에서 종료)"""
    ring = theta.ring
    acc = ChainMatrix.zeros(ring, theta.nrows, theta.ncols)
    power = theta ** start
    n = start
    bound = _series_bound(theta)
    while not power.is_zero():
        if n > bound:
            raise NonTerminatingSeriesError(f"matrix powers do not vanish by n = {bound}")
        c = coeff(n)
        if not c.is_zero():
            acc = acc + power * c
        power = power.matmul(theta)
        n += 1
    return acc


def exp_neg_e_theta(theta: ChainMatrix) -> ChainMatrix:
    """P = exp(−εΘ) = Σ (−1)^n ε^{[n]} Θ^n"""
    ring = theta.ring
    return _power_series(theta, lambda n: divided_power_epsilon(ring, n) * (-1) ** n)


def f_series(theta: ChainMatrix) -> ChainMatrix:
    """
    F(Θ) = Σ_{l≥0} (−1)^{l+1} (ε^{[l+1]}/ε) Θ^l

    εΘ·F(Θ) = P − I, F(0) = −I.
    """
    ring = theta.ring
    return _power_series(theta, lambda l: epsilon_quotient(ring, l) * (-1) ** (l + 1))


def f_inverse(F: ChainMatrix) -> ChainMatrix:
    """F = −(I − X) 의 역행렬 −Σ X^k (X = F + I 는 멱영)"""
    ring = F.ring
    X = F + ChainMatrix.identity(ring, F.nrows)
    minus_one = CycloElem.from_int(ring, -1)
    inv = _power_series(X, lambda _: minus_one)
    if not F.matmul(inv).is_identity():
        raise NotInvertibleError("F(Θ) is not a unit")
    return inv


@cached
def _alpha_quotient(ring: RingSpec, alpha: Fraction, n: int) -> CycloElem:
    """ε^{[n]}/(ζ^α − 1) 의 정확한 값 (정밀도를 올려 나눈 뒤 축약)"""
    den = zeta_power(ring, alpha) - 1
    hi = ring.boosted(-(-den.valuation // ring.e) + 1)
    q = exact_div(divided_power_epsilon(hi, n), zeta_power(hi, alpha) - 1)
    return q.reduce_to(ring)


def theta_alpha(theta: ChainMatrix, alpha) -> ChainMatrix:
    """
    Θ_α = I + ζ^α Σ_{n≥1} (−1)^n (ε^{[n]}/(ζ^α−1)) Θ^n

    (ζ^α − 1)Θ_α = ζ^α P − I 를 만족하는 단원 행렬.

    Args:
        theta: Θ
        alpha: 0 이 아닌 가중치

    Returns:
        Θ_α
    """
    value = as_weight(alpha)
    if value == 0:
        raise ValueError("theta_alpha needs a nonzero weight")
    ring = theta.ring
    z = zeta_power(ring, value)
    tail = _power_series(theta, lambda n: _alpha_quotient(ring, value, n) * (-1) ** n, start=1)
    return ChainMatrix.identity(ring, theta.nrows) + tail * z


@dataclass(frozen=True)
class LogResult:
    """log_unipotent 결과: Θ 와 그 신뢰 π-단계 수"""

    theta: ChainMatrix
    reliable: int


def log_unipotent(P: ChainMatrix, target: Optional[RingSpec] = None) -> LogResult:
    """
    P = exp(−εΘ) 로부터 Θ 복원

    L = Σ (−1)^{n+1}(P−I)^n/n, Θ = −L/ε. 정수 n 과 ε 로의 나눗셈이 깎아낸 정밀도를
    추적하고, 결과는 신뢰할 수 있는 가장 큰 정밀도 (또는 target) 로 축약한다.

    Args:
        P: 단위 멱영 행렬 (P − I 멱영)
        target: 결과를 축약할 링 (선택)

    Returns:
        LogResult

    Raises:
        NonTerminatingSeriesError: P − I 가 멱영이 아님
        PrecisionError: 신뢰 정밀도가 target 에 못 미침
    """
    ring = P.ring
    X = P - ChainMatrix.identity(ring, P.nrows)
    acc = ChainMatrix.zeros(ring, P.nrows, P.ncols)
    power = X
    n = 1
    bound = _series_bound(X)
    while not power.is_zero():
        if n > bound:
            raise NonTerminatingSeriesError("P - I is not nilpotent")
        divisor = CycloElem.from_int(ring, n)
        try:
            term = power.map_entries(lambda a: exact_div(a, divisor))
        except DivisionError as exc:
            raise PrecisionError(f"(P - I)^{n} is not divisible by {n}") from exc
        acc = acc + (term if n % 2 else -term)
        power = power.matmul(X)
        n += 1
    eps = epsilon(ring)
    try:
        theta = (-acc).map_entries(lambda a: exact_div(a, eps))
    except DivisionError as exc:
        raise PrecisionError("log(P) is not divisible by zeta_p - 1") from exc

    reliable = theta.reliable
    usable = reliable // ring.e
    if target is not None:
        if target.N > usable:
            raise PrecisionError(f"log is reliable to {usable} digits, {target.N} requested")
        usable = target.N
    if usable < 1:
        raise PrecisionError("log lost all precision")
    out = ring.with_precision(min(usable, ring.N))
    return LogResult(theta.reduce_to(out), reliable)


# ----- 로그 멱영 표현 -----

@dataclass(frozen=True)
class LogNilpRep:
    """
    계수 링 위 랭크 r 자유 가군과 가환 행렬 Θ_1..Θ_d

    ring 은 작업 링이며 보고 정밀도는 ring.N − guard. floor 는 Θ_i 성분의
    π-valuation 하한.
    """

    ring: RingSpec
    thetas: Tuple[ChainMatrix, ...]
    rho: CycloElem
    floor: int = 1
    guard: int = 0

    def __post_init__(self):
        if not self.thetas:
            raise RepresentationError("at least one Higgs matrix is required")
        r = self.thetas[0].nrows
        for t in self.thetas:
            if t.ring != self.ring or t.shape != (r, r):
                raise RepresentationError(f"theta of shape {t.shape} does not fit rank {r}")
        if self.rho.ring != self.ring:
            raise RepresentationError("rho lives in a different ring")
        if not 0 <= self.guard < self.ring.N:
            raise RepresentationError(f"guard {self.guard} leaves no reported precision")
        if not commute_pairwise(self.thetas):
            raise RepresentationError("Higgs matrices do not commute")
        low = min(t.min_valuation() for t in self.thetas)
        if low < self.floor:
            raise RepresentationError(f"entry valuation {low} below floor {self.floor}")

    @property
    def rank(self) -> int:
        return self.thetas[0].nrows

    @property
    def d(self) -> int:
        return len(self.thetas)

    @property
    def reported(self) -> RingSpec:
        return self.ring.with_precision(self.ring.N - self.guard)

    @cached_property
    def P(self) -> Tuple[ChainMatrix, ...]:
        return tuple(exp_neg_e_theta(t) for t in self.thetas)

    @cached_property
    def F(self) -> Tuple[ChainMatrix, ...]:
        return tuple(f_series(t) for t in self.thetas)

    @cached_property
    def F_inv(self) -> Tuple[ChainMatrix, ...]:
        return tuple(f_inverse(f) for f in self.F)

    def derived_commute(self) -> bool:
        """P_i, F(Θ_i), Θ_j 가 모두 서로 가환"""
        return commute_pairwise(list(self.thetas) + list(self.P) + list(self.F))

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.to_json(),
            "r": self.rank,
            "theta": [t.to_json() for t in self.thetas],
            "a_exponent": self.floor,
            "guard": self.guard,
        }


# ----- M_α(V) (한 변수) -----

@dataclass(frozen=True)
class MAlphaModule:
    """
    M_α(V) 의 차수 ≤ D 절단 (기저 v_j ⊗ ρ^n X^{[n]} e_α)

    Γ 는 γ(ρ^nX^{[n]}) = ζ^α Σ ρ^{[n−i]}ε^{n−i} ρ^iX^{[i]} 와 P 로 작용한다.
    """

    ring: RingSpec
    theta: ChainMatrix
    P: ChainMatrix
    rho: CycloElem
    alpha: Fraction
    D: int

    @classmethod
    def trivial(cls, ring: RingSpec, rho: CycloElem, alpha=0, D: int = 4) -> "MAlphaModule":
        eye = ChainMatrix.identity(ring, 1)
        return cls(ring, ChainMatrix.zeros(ring, 1, 1), eye, rho, as_weight(alpha), D)

    @property
    def r(self) -> int:
        return self.theta.nrows

    @property
    def rank(self) -> int:
        return self.r * (self.D + 1)

    @cached_property
    def pd(self) -> PDAlgebraSpec:
        return PDAlgebraSpec(self.ring, 1, self.rho, self.D)

    @cached_property
    def F(self) -> ChainMatrix:
        return f_series(self.theta)

    @cached_property
    def gamma_matrix(self) -> ChainMatrix:
        return module_gamma_matrix(self.pd, 0, self.P, (self.alpha,))

    @cached_property
    def gamma_minus_one_matrix(self) -> ChainMatrix:
        return self.gamma_matrix - ChainMatrix.identity(self.ring, self.rank)

    def koszul(self) -> FreeComplex:
        """M_α(V) →^{γ−1} M_α(V)"""
        return FreeComplex(self.ring, 0, (self.rank, self.rank), (self.gamma_minus_one_matrix,))

    def extended(self, k: int) -> "MAlphaModule":
        return dataclasses.replace(self, D=self.D + k)

    def zero(self) -> "MAlphaElem":
        return MAlphaElem(self, tuple(zero_vector(self.ring, self.r) for _ in range(self.D + 1)))

    def element(self, coeffs: Sequence[Sequence[CycloElem]]) -> "MAlphaElem":
        vecs = [tuple(v) for v in coeffs][: self.D + 1]
        vecs += [zero_vector(self.ring, self.r)] * (self.D + 1 - len(vecs))
        return MAlphaElem(self, tuple(vecs))

    def from_flat(self, vector: Sequence[CycloElem]) -> "MAlphaElem":
        r = self.r
        return MAlphaElem(self, tuple(tuple(vector[n * r:(n + 1) * r]) for n in range(self.D + 1)))

    def basis(self) -> List["MAlphaElem"]:
        one = CycloElem.one(self.ring)
        out = []
        for t in range(self.rank):
            flat = [CycloElem.zero(self.ring)] * self.rank
            flat[t] = one
            out.append(self.from_flat(flat))
        return out


@dataclass(frozen=True)
class MAlphaElem:
    """Σ b_n ρ^nX^{[n]} e_α (b_n ∈ V, n ≤ D)"""

    module: MAlphaModule
    coeffs: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.module.D + 1:
            raise RepresentationError(f"expected {self.module.D + 1} coefficient vectors")

    def flat(self) -> Vector:
        return tuple(x for v in self.coeffs for x in v)

    def coefficient(self, n: int) -> Vector:
        if 0 <= n <= self.module.D:
            return self.coeffs[n]
        return zero_vector(self.module.ring, self.module.r)

    def padded(self, module: MAlphaModule) -> "MAlphaElem":
        """더 큰 절단 (또는 같은 절단) 으로의 매장"""
        if module.D < self.module.D and any(
                not all(x.is_zero() for x in v) for v in self.coeffs[module.D + 1:]):
            raise RepresentationError("element does not fit the smaller truncation")
        return module.element(self.coeffs)

    def is_zero(self) -> bool:
        return all(x.is_zero() for v in self.coeffs for x in v)

    def degree(self) -> int:
        return max((n for n, v in enumerate(self.coeffs) if any(not x.is_zero() for x in v)), default=-1)

    def __add__(self, other: "MAlphaElem") -> "MAlphaElem":
        return MAlphaElem(self.module, tuple(vec_add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "MAlphaElem") -> "MAlphaElem":
        return MAlphaElem(self.module, tuple(tuple(x - y for x, y in zip(a, b))
                                             for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "MAlphaElem":
        return MAlphaElem(self.module, tuple(tuple(x * c for x in v) for v in self.coeffs))

    def apply(self, A: ChainMatrix) -> "MAlphaElem":
        return MAlphaElem(self.module, tuple(A.apply(v) for v in self.coeffs))


def gamma_minus_one(x: MAlphaElem) -> MAlphaElem:
    """
    (γ−1)x 의 n 번째 계수 Σ_{m≥1} ζ^αP a_{n+m} ρ^{[m]}ε^m + (ζ^αP − I) a_n
    """
    module = x.module
    ring = module.ring
    zP = module.P * zeta_power(ring, module.alpha)
    shifts = module.pd.shift_coefficients
    out = []
    for n in range(module.D + 1):
        acc = tuple(a - b for a, b in zip(zP.apply(x.coeffs[n]), x.coeffs[n]))
        for m in range(1, module.D - n + 1):
            moved = zP.apply(x.coeffs[n + m])
            acc = vec_add(acc, tuple(c * shifts[m] for c in moved))
        out.append(acc)
    return MAlphaElem(module, tuple(out))


# ----- f_V, g_V -----

def _require_weight_zero(module: MAlphaModule):
    if module.alpha != 0:
        raise ValueError("f_V and g_V are defined on M_0(V) only")


@cached
def g_kernel(P: ChainMatrix, rho: CycloElem, m_max: int) -> Tuple[ChainMatrix, ...]:
    """
    T_m = Σ_l (−1)^l Σ_{m_1+…+m_l=m} P^l ∏ (ρ^{[m_j+1]}/ρ) ε^{m_j}

    생성함수 1/(1 + P·K(t)) 의 계수로 계산한다: T_0 = I, T_m = −P Σ_j κ_j T_{m−j}.
    """
    ring = P.ring
    eps = epsilon(ring)
    kappa = [divided_power_quotient(rho, j) * (eps ** j) for j in range(m_max + 1)]
    T = [ChainMatrix.identity(ring, P.nrows)]
    for m in range(1, m_max + 1):
        acc = ChainMatrix.zeros(ring, P.nrows, P.ncols)
        for j in range(1, m + 1):
            if not kappa[j].is_zero():
                acc = acc + T[m - j] * kappa[j]
        T.append(-(P.matmul(acc)))
    return tuple(T)


def g_V(y: MAlphaElem) -> MAlphaElem:
    """
    g_V(y) = Σ_{n≥1} a_n ρ^nX^{[n]}, a_{n+1} = b_n + Σ_{m≥1} T_m b_{n+m}

    차수 ≤ D 인 y 를 차수 ≤ D+1 절단으로 보낸다 (상수항 0).
    """
    module = y.module
    _require_weight_zero(module)
    T = g_kernel(module.P, module.rho, module.D)
    target = module.extended(1)
    coeffs = [zero_vector(module.ring, module.r)]
    for n in range(module.D + 1):
        acc = y.coeffs[n]
        for m in range(1, module.D - n + 1):
            acc = vec_add(acc, T[m].apply(y.coeffs[n + m]))
        coeffs.append(acc)
    return MAlphaElem(target, tuple(coeffs))


def g_V_inverse(x: MAlphaElem) -> MAlphaElem:
    """
    x = g_V(y) + a_0 인 y (b_n = Σ_{m≥0} P a_{n+1+m} (ρ^{[m+1]}/ρ) ε^m)

    차수 ≤ D 인 x 에서 차수 ≤ D−1 인 y 를 돌려준다.
    """
    module = x.module
    _require_weight_zero(module)
    if module.D < 1:
        raise ValueError("g_V inverse needs D >= 1")
    source = module.extended(-1)
    eps = epsilon(module.ring)
    kappa = [divided_power_quotient(module.rho, m) * (eps ** m) for m in range(module.D)]
    coeffs = []
    for n in range(module.D):
        acc = zero_vector(module.ring, module.r)
        for m in range(module.D - n):
            moved = module.P.apply(x.coeffs[n + 1 + m])
            acc = vec_add(acc, tuple(c * kappa[m] for c in moved))
        coeffs.append(acc)
    return MAlphaElem(source, tuple(coeffs))


def f_V(y: MAlphaElem) -> MAlphaElem:
    """f_V(y) = ρε·y + εF(Θ)Θ·g_V(y) (차수 ≤ D+1 절단)"""
    module = y.module
    _require_weight_zero(module)
    g = g_V(y)
    target = g.module
    eps = epsilon(module.ring)
    twist = module.F.matmul(module.theta) * eps
    lifted = y.padded(target)
    return lifted.scale(module.rho * eps) + g.apply(twist)


def f_V_matrix(module: MAlphaModule) -> ChainMatrix:
    """f_V: M^{≤D} → M^{≤D+1} 의 행렬 (열 = 기저의 상)"""
    columns = [f_V(b).flat() for b in module.basis()]
    return ChainMatrix.from_columns(module.ring, columns, module.extended(1).rank)


# ----- V_{Θ/ρ} -----

@dataclass(frozen=True)
class ThetaRhoWitness:
    """ρ·w_{n} = Θ·w_{n−1} (w_0 = v) 를 만족하는 증인 사슬"""

    accepted: bool
    chain: Tuple[Vector, ...]
    reason: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {"accepted": self.accepted, "length": len(self.chain), "reason": self.reason}


def v_theta_rho_member(theta: ChainMatrix, rho: CycloElem, v: Sequence[CycloElem],
                       depth: Optional[int] = None, target: Optional[RingSpec] = None) -> ThetaRhoWitness:
    """
    v ∈ V_{Θ/ρ} 판정 (증인 사슬 방식)

    w_n = ρ^{-1}Θw_{n−1} 을 정확한 나눗셈으로 만들고, 사슬이 0 에 도달하면 수락한다.
    나눗셈이 불가능하거나 depth 안에 끝나지 않으면 거절한다.

    Args:
        theta: Θ (작업 링)
        rho: ρ
        v: 시작 벡터
        depth: 사슬 길이 한계 (기본 r·N·e + 1)
        target: 사슬을 축약할 링 (선택)

    Returns:
        ThetaRhoWitness
    """
    limit = _series_bound(theta) if depth is None else depth
    w = tuple(v)
    chain = [w]
    accepted, reason = False, f"chain did not vanish within {limit} steps"
    for _ in range(limit):
        if all(x.is_zero() for x in w):
            accepted, reason = True, ""
            break
        image = theta.apply(w)
        if any(not x.is_zero() and x.valuation < rho.valuation for x in image):
            reason = f"theta(w_{len(chain) - 1}) is not divisible by rho"
            break
        w = tuple(exact_div(x, rho).with_reliable(None) for x in image)
        chain.append(w)
    else:
        if all(x.is_zero() for x in w):
            accepted, reason = True, ""
    if target is not None:
        chain = [tuple(x.reduce_to(target) for x in c) for c in chain]
    while len(chain) > 1 and all(x.is_zero() for x in chain[-1]) and all(x.is_zero() for x in chain[-2]):
        chain.pop()
    return ThetaRhoWitness(accepted, tuple(chain), reason)


def exp_theta_X(witness: ThetaRhoWitness, module: MAlphaModule) -> MAlphaElem:
    """
    exp(ΘX)v = Σ w_n ρ^nX^{[n]} (D 에서 절단)

    사슬이 D 안에서 끝나면 결과는 γ 에 대해 정확히 불변이다.
    """
    if not witness.accepted:
        raise WitnessError(f"no witness chain: {witness.reason}")
    coeffs = [tuple(x.reduce_to(module.ring) for x in w) for w in witness.chain]
    return module.element(coeffs)


# ----- Γ-코호몰로지 -----

@dataclass(frozen=True)
class GammaCohomology:
    """H^0, H^1 과 기대되는 인자 목록 (공통 정밀도에서 비교)"""

    h0: ModulePresentation
    h1: ModulePresentation
    precision: int
    expected_h0: Tuple[int, ...]
    expected_h1: Tuple[int, ...]

    def matches(self) -> bool:
        R = self.precision
        return (self.h0.capped(R) == capped_factors(self.expected_h0, R)
                and self.h1.capped(R) == capped_factors(self.expected_h1, R))

    def to_json(self) -> Dict[str, Any]:
        return {
            "precision": self.precision,
            "h0": list(self.h0.factors),
            "h1": list(self.h1.factors),
            "expected_h0": list(self.expected_h0),
            "expected_h1": list(self.expected_h1),
            "matches": self.matches(),
        }


def gamma_cohomology_M_alpha(module: MAlphaModule, precision: Optional[int] = None) -> GammaCohomology:
    """
    M_α(V) →^{γ−1} M_α(V) 의 코호몰로지와 기대 형태

    α ≠ 0: H^0 = 0, H^1 ≅ M_α/(ζ^α−1).
    α = 0 (ρ^{-1}Θ 의 거듭제곱이 D 안에서 소멸): H^0 ≅ V, H^1 은 차수 < D 에서
    M_0/ρε 이고 최고 차수 성분은 자유.

    Args:
        module: 절단된 M_α(V)
        precision: 비교 정밀도 (기본 stable_precision)

    Returns:
        GammaCohomology
    """
    C = module.koszul()
    R = stable_precision(C) if precision is None else precision
    h0 = cohomology(C, 0, R)
    h1 = cohomology(C, 1, R)
    ring = module.ring
    if module.alpha != 0:
        k = (zeta_power(ring, module.alpha) - 1).valuation
        expected_h0: Tuple[int, ...] = ()
        expected_h1 = (k,) * module.rank
    else:
        k = (module.rho * epsilon(ring)).valuation
        expected_h0 = (R,) * module.r
        expected_h1 = (k,) * (module.D * module.r) + (R,) * module.r
    return GammaCohomology(h0, h1, R, expected_h0, expected_h1)


def pd_gamma_cohomology(spec: PDAlgebraSpec, alpha=0) -> GammaCohomology:
    """한 변수 PD 대수 (자명 표현) 의 Γ-코호몰로지"""
    if spec.d != 1:
        raise ValueError("pd_gamma_cohomology is the one-variable computation")
    return gamma_cohomology_M_alpha(MAlphaModule.trivial(spec.ring, spec.rho, alpha, spec.D))


@dataclass(frozen=True)
class CohoPrinciple:
    """γ−1 의 직접 계산과 (f_V, εΘF) 표현의 비교"""

    direct: Tuple[ModulePresentation, ModulePresentation]
    principle: Tuple[ModulePresentation, ModulePresentation]

    def agrees(self) -> bool:
        return all(a.factors == b.factors for a, b in zip(self.direct, self.principle))

    def to_json(self) -> Dict[str, Any]:
        return {
            "direct": [list(h.factors) for h in self.direct],
            "principle": [list(h.factors) for h in self.principle],
            "agrees": self.agrees(),
        }


def coho_principle_h1(module: MAlphaModule) -> CohoPrinciple:
    """
    M_0(V)^{≤D−1} ⊕ V →^{(f_V, εΘF)} M_0(V)^{≤D} 로 H^0, H^1 계산

    (g_V, id) 가 복체의 동형을 주므로 인자 목록은 직접 계산과 정확히 같아야 한다.
    """
    _require_weight_zero(module)
    if module.D < 1:
        raise ValueError("the cohomology principle needs D >= 1")
    ring = module.ring
    lower = module.extended(-1)
    columns = list(f_V_matrix(lower).columns())
    twist = module.theta.matmul(module.F) * epsilon(ring)
    for j in range(module.r):
        head = twist.column(j)
        columns.append(head + zero_vector(ring, module.rank - module.r))
    d = ChainMatrix.from_columns(ring, columns, module.rank)
    C = FreeComplex(ring, 0, (d.ncols, module.rank), (d,))
    direct = module.koszul()
    return CohoPrinciple(
        direct=(cohomology(direct, 0), cohomology(direct, 1)),
        principle=(cohomology(C, 0), cohomology(C, 1)),
    )


def coho_principle_triangle(y: MAlphaElem, v: Sequence[CycloElem]) -> bool:
    """(γ−1)(g_V(y) + v) = f_V(y) + εΘF·v"""
    module = y.module
    g = g_V(y)
    big = g.module
    v_elem = big.element([tuple(v)])
    lhs = gamma_minus_one(g + v_elem)
    twist = module.theta.matmul(module.F) * epsilon(module.ring)
    rhs = f_V(y) + big.element([twist.apply(tuple(v))])
    return lhs == rhs
