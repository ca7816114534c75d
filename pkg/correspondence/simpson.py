"""
simpson.py

작은 표현 ↔ 작은 Higgs 가군 (국소 정수 Simpson 대응), 텐서/쌍대 호환성,
PD 대수의 Künneth 코호몰로지, Lη–Koszul 비교, 가중치 분해 모델
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from algebras.lognil import (
    LogNilpRep, MAlphaModule, RepresentationError, log_unipotent,
)
from algebras.pdalg import (
    MultiIndex, PDAlgebraSpec, module_gamma_matrix, module_theta_matrix, multi_indices,
    theta_pd_matrix,
)
from analyzers.complexes import (
    FreeComplex, capped_factors, cohomology, decalage_presentation,
    eta_koszul_rescale, image_presentation, koszul_complex, stable_precision,
)
from rings.cyclo import CycloElem, RingSpec, as_weight, epsilon, weight_level, zeta_power
from rings.matrix import ChainMatrix, Vector, commute_pairwise, zero_vector


class CocycleError(ValueError):
    """코사이클 조건 실패 (재귀가 경로에 의존)"""


class SmallnessError(ValueError):
    """작음 조건 (valuation 하한) 위반"""


# ----- 작은 표현 / Higgs 가군 -----

@dataclass(frozen=True)
class SmallRep:
    """
    γ_i 가 P_i 로 작용하는 랭크 r 표현 (기저 링에는 자명하게 작용)

    floor 는 대응하는 Θ_i 성분의 π-valuation 하한이며 P_i − I 의 성분은
    floor + val(ζ_p − 1) 이상이어야 한다.
    """

    ring: RingSpec
    P: Tuple[ChainMatrix, ...]
    rho: CycloElem
    floor: int
    guard: int = 0

    def __post_init__(self):
        if not self.P:
            raise SmallnessError("at least one generator is required")
        r = self.P[0].nrows
        if any(m.shape != (r, r) or m.ring != self.ring for m in self.P):
            raise SmallnessError("generator matrices do not share a shape and ring")
        if not commute_pairwise(self.P):
            raise SmallnessError("generator matrices do not commute")
        eye = ChainMatrix.identity(self.ring, r)
        need = self.floor + epsilon(self.ring).valuation
        low = min((m - eye).min_valuation() for m in self.P)
        if low < need:
            raise SmallnessError(f"P - I has entry valuation {low} < {need}")

    @classmethod
    def from_higgs(cls, rep: LogNilpRep) -> "SmallRep":
        return cls(rep.ring, rep.P, rep.rho, rep.floor, rep.guard)

    @property
    def rank(self) -> int:
        return self.P[0].nrows

    @property
    def d(self) -> int:
        return len(self.P)

    @property
    def reported(self) -> RingSpec:
        return self.ring.with_precision(self.ring.N - self.guard)

    def reported_P(self) -> Tuple[ChainMatrix, ...]:
        return tuple(m.reduce_to(self.reported) for m in self.P)

    def tensor(self, other: "SmallRep") -> "SmallRep":
        if other.ring != self.ring or other.d != self.d:
            raise SmallnessError("tensor product needs a shared ring and dimension")
        return SmallRep(self.ring, tuple(a.kron(b) for a, b in zip(self.P, other.P)),
                        self.rho, min(self.floor, other.floor), max(self.guard, other.guard))

    def dual(self) -> "SmallRep":
        return SmallRep(self.ring, tuple(m.transpose().inverse() for m in self.P),
                        self.rho, self.floor, self.guard)

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": self.reported.to_json(),
            "r": self.rank,
            "d": self.d,
            "P": [m.to_json() for m in self.reported_P()],
            "a_exponent": self.floor,
        }


class SmallHiggs(LogNilpRep):
    """Θ_i 성분이 ρ 보다 적어도 한 π-단계 더 작은 Higgs 가군"""

    def __post_init__(self):
        super().__post_init__()
        if self.floor <= self.rho.valuation:
            raise SmallnessError(f"floor {self.floor} must exceed val(rho) = {self.rho.valuation}")


def wang_normalization(H: LogNilpRep) -> Tuple[ChainMatrix, ...]:
    """주기환 쪽에서 쓰는 정규화된 장 (ζ_p − 1)Θ_i"""
    eps = epsilon(H.ring)
    return tuple(t * eps for t in H.thetas)


# ----- exp(±ΣΘ_kY_k)v -----

def exp_coefficients(thetas: Sequence[ChainMatrix], rho: CycloElem, v: Sequence[CycloElem],
                     D: int, sign: int = 1) -> Dict[MultiIndex, Vector]:
    """
    exp(±ΣΘ_kY_k)v 의 ρ^{|n|}Y^{[n]} 계수 ∏(±ρ^{-1}Θ_k)^{n_k} v

    ρ^{-1}Θ_k 는 입력 링에서 정확히 나누어 구한다 (Θ_k 는 ρ 로 나누어떨어져야 함).
    """
    try:
        primes = [t.divide_scalar(rho) for t in thetas]
    except ArithmeticError as exc:
        raise SmallnessError("Higgs matrices are not divisible by rho") from exc
    if sign < 0:
        primes = [-t for t in primes]
    d = len(thetas)
    coeffs: Dict[MultiIndex, Vector] = {}
    for n in multi_indices(d, D):
        if sum(n) == 0:
            coeffs[n] = tuple(v)
            continue
        i = next(k for k in range(d) if n[k] > 0)
        prev = n[:i] + (n[i] - 1,) + n[i + 1:]
        coeffs[n] = primes[i].apply(coeffs[prev])
    return coeffs


def _flat(coeffs: Dict[MultiIndex, Vector], spec: PDAlgebraSpec) -> Vector:
    ring = spec.ring
    return tuple(x.reduce_to(ring) for n in spec.indices for x in coeffs[n])


def exp_vectors(H: LogNilpRep, spec: PDAlgebraSpec, sign: int = 1) -> List[Vector]:
    """기저 v_j 마다 exp(±ΣΘ_kY_k)v_j 를 spec 의 링/순서로 평탄화"""
    out = []
    one = CycloElem.one(H.ring)
    for j in range(H.rank):
        v = [CycloElem.zero(H.ring)] * H.rank
        v[j] = one
        out.append(_flat(exp_coefficients(H.thetas, H.rho, v, spec.D, sign), spec))
    return out


def _degree_mask(spec: PDAlgebraSpec, r: int, top: int) -> List[bool]:
    return [sum(n) <= top for n in spec.indices for _ in range(r)]


def _masked_equal(u: Vector, w: Vector, mask: Sequence[bool]) -> bool:
    return all(a == b for a, b, keep in zip(u, w, mask) if keep)


@dataclass(frozen=True)
class BasisCertificate:
    """절단된 가군에서의 불변량/핵 인증서"""

    annihilated: bool
    spans: bool
    field_matches: bool
    precision: int
    h0: Tuple[int, ...]
    span: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.annihilated and self.spans and self.field_matches

    def to_json(self) -> Dict[str, Any]:
        return {
            "annihilated": self.annihilated,
            "spans": self.spans,
            "field_matches": self.field_matches,
            "precision": self.precision,
            "h0": list(self.h0),
            "span": list(self.span),
        }


def _field_matches(spec: PDAlgebraSpec, vectors: List[Vector], thetas: Sequence[ChainMatrix],
                   mask: Sequence[bool], sign: int = 1) -> bool:
    """
    인증된 기저 u_j 위에서 ∂_i 가 ±Θ_i 로 작용하는지 확인

    ∂_i u_j = sign·Σ_k (Θ_i)_{kj} u_k (최상위 차수는 mask 로 제외)
    """
    ring = spec.ring
    r = len(vectors)
    eye = ChainMatrix.identity(ring, r)
    for i, theta in enumerate(thetas):
        shift = theta_pd_matrix(spec, i).kron(eye)
        for j, vec in enumerate(vectors):
            expected = zero_vector(ring, spec.rank * r)
            for k in range(r):
                c = theta[k, j]
                if not c.is_zero():
                    expected = tuple(a + c * sign * b for a, b in zip(expected, vectors[k]))
            if not _masked_equal(shift.apply(vec), expected, mask):
                return False
    return True


def _certify(maps: Sequence[ChainMatrix], vectors: List[Vector], spec: PDAlgebraSpec, r: int,
             field_matches: bool) -> BasisCertificate:
    ring = spec.ring
    K = koszul_complex(ring, spec.rank * r, maps)
    R = stable_precision(K)
    h0 = cohomology(K, 0, R)
    span = image_presentation(K, 0, vectors, R)
    annihilated = all(all(x.is_zero() for x in m.apply(v)) for m in maps for v in vectors)
    return BasisCertificate(
        annihilated=annihilated,
        spans=h0.capped(R) == span.capped(R),
        field_matches=field_matches,
        precision=R,
        h0=h0.factors,
        span=span.factors,
    )


def rep_to_higgs(V: SmallRep, D: int = 4, certify: bool = True,
                 degree_guard: Optional[int] = None) -> Tuple[SmallHiggs, Optional[BasisCertificate]]:
    """
    P_i 의 로그로 Θ_i 를 복원하고 exp(ΣΘ_kY_k)v_j 가 Γ-불변량을 생성함을 인증

    Args:
        V: 작은 표현 (작업 링)
        D: PD 절단 차수
        certify: 인증서 계산 여부
        degree_guard: 장 비교에서 제외할 최상위 차수 수 (기본 1)

    Returns:
        (SmallHiggs, BasisCertificate 또는 None)

    Raises:
        SmallnessError: 로그 급수가 끝나지 않거나 정밀도가 부족함
    """
    target = V.reported
    thetas = []
    try:
        for m in V.P:
            thetas.append(log_unipotent(m).theta)
    except ArithmeticError as exc:
        raise SmallnessError(f"logarithm failed: {exc}") from exc
    ring = min((t.ring for t in thetas), key=lambda g: g.N)
    if ring.N < target.N:
        raise SmallnessError(f"logarithm reliable to {ring.N} digits, {target.N} reported")
    thetas = [t.reduce_to(ring) for t in thetas]
    try:
        H = SmallHiggs(ring, tuple(thetas), V.rho.reduce_to(ring), V.floor, ring.N - target.N)
    except RepresentationError as exc:
        raise SmallnessError(str(exc)) from exc
    if not certify:
        return H, None

    rho_t = V.rho.reduce_to(target)
    spec = PDAlgebraSpec(target, V.d, rho_t, D)
    P_t = V.reported_P()
    maps = [module_gamma_matrix(spec, i, P_t[i]) - ChainMatrix.identity(target, spec.rank * V.rank)
            for i in range(V.d)]
    vectors = exp_vectors(H, spec, sign=1)
    top = D - (1 if degree_guard is None else degree_guard)
    mask = _degree_mask(spec, V.rank, top)
    thetas_t = [t.reduce_to(target) for t in thetas]
    return H, _certify(maps, vectors, spec, V.rank, _field_matches(spec, vectors, thetas_t, mask))


def higgs_to_rep(H: LogNilpRep, D: int = 4, certify: bool = True) -> Tuple[SmallRep, Optional[BasisCertificate]]:
    """
    γ_i 가 exp(−(ζ_p−1)Θ_i) 로 작용하는 표현과 Θ_H 핵 인증서

    인증서: 절단된 H ⊗ A 에서 Θ_H = Θ_i ⊗ 1 + 1 ⊗ ∂_i 의 공통 핵이
    exp(−ΣΘ_kY_k)·(H 의 기저) 로 생성됨.
    """
    V = SmallRep.from_higgs(H)
    if not certify:
        return V, None
    target = H.reported
    spec = PDAlgebraSpec(target, H.d, H.rho.reduce_to(target), D)
    maps = [module_theta_matrix(spec, i, t.reduce_to(target)) for i, t in enumerate(H.thetas)]
    vectors = exp_vectors(H, spec, sign=-1)
    mask = _degree_mask(spec, H.rank, D - 1)
    thetas_t = [t.reduce_to(target) for t in H.thetas]
    return V, _certify(maps, vectors, spec, H.rank, _field_matches(spec, vectors, thetas_t, mask, sign=-1))


def round_trip(V: SmallRep, D: int = 4, certify: bool = True) -> Dict[str, Any]:
    """표현 → Higgs → 표현 이 P_i 를 정확히 재현하는지 확인"""
    H, rep_cert = rep_to_higgs(V, D, certify)
    back, higgs_cert = higgs_to_rep(H, D, certify)
    target = V.reported
    same = all(a.reduce_to(target) == b for a, b in zip(back.P, V.reported_P()))
    certs_ok = (not certify) or (rep_cert.passed and higgs_cert.passed)
    return {
        "passed": same and certs_ok,
        "same_P": same,
        "rep_certificate": rep_cert.to_json() if rep_cert else None,
        "higgs_certificate": higgs_cert.to_json() if higgs_cert else None,
    }


@dataclass(frozen=True)
class TensorDualVerdict:
    tensor: bool
    dual: bool
    double_dual: bool

    @property
    def passed(self) -> bool:
        return self.tensor and self.dual and self.double_dual

    def to_json(self) -> Dict[str, Any]:
        return {"tensor": self.tensor, "dual": self.dual, "double_dual": self.double_dual,
                "passed": self.passed}


def tensor_dual_check(V: SmallRep, W: SmallRep) -> TensorDualVerdict:
    """
    Θ_{V⊗W} = Θ_V ⊗ 1 + 1 ⊗ Θ_W, Θ_{V^∨} = −Θ_V^T, (V^∨)^∨ = V
    """
    target = min(V.reported, W.reported, key=lambda g: g.N)
    HV, _ = rep_to_higgs(V, certify=False)
    HW, _ = rep_to_higgs(W, certify=False)
    HVW, _ = rep_to_higgs(V.tensor(W), certify=False)
    eye_v = ChainMatrix.identity(target, V.rank)
    eye_w = ChainMatrix.identity(target, W.rank)
    tensor_ok = True
    for a, b, c in zip(HV.thetas, HW.thetas, HVW.thetas):
        expected = a.reduce_to(target).kron(eye_w) + eye_v.kron(b.reduce_to(target))
        tensor_ok = tensor_ok and c.reduce_to(target) == expected
    HD, _ = rep_to_higgs(V.dual(), certify=False)
    dual_ok = all(d.reduce_to(target) == -(a.reduce_to(target).transpose())
                  for a, d in zip(HV.thetas, HD.thetas))
    double_ok = V.dual().dual().P == V.P
    return TensorDualVerdict(tensor_ok, dual_ok, double_ok)


# ----- Künneth -----

def kunneth_combine(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]],
                    precision: int) -> List[List[int]]:
    """
    이산 값매김 링 위 Künneth: H^n = ⊕_{i+j=n} H^i⊗H^j ⊕ ⊕_{i+j=n+1} Tor(H^i, H^j)

    인자 k ≥ precision 은 자유 성분으로 취급한다.
    """
    R = precision
    top = len(first) + len(second) - 1
    out: List[List[int]] = [[] for _ in range(top)]
    for i, a_list in enumerate(first):
        for j, b_list in enumerate(second):
            for a in a_list:
                for b in b_list:
                    a_c, b_c = min(a, R), min(b, R)
                    out[i + j].append(min(a_c, b_c))
                    if i + j >= 1 and a_c < R and b_c < R:
                        out[i + j - 1].append(min(a_c, b_c))
    return [sorted(x for x in level if x > 0) for level in out]


@dataclass(frozen=True)
class KunnethReport:
    direct: Tuple[Tuple[int, ...], ...]
    predicted: Tuple[Tuple[int, ...], ...]
    one_variable: Tuple[Tuple[int, ...], ...]
    precision: int

    @property
    def matches(self) -> bool:
        R = self.precision
        return all(capped_factors(a, R) == capped_factors(b, R)
                   for a, b in zip(self.direct, self.predicted))

    def _free_rank(self, factors: Sequence[int]) -> int:
        return sum(1 for k in factors if k >= self.precision)

    @property
    def exterior_free_ranks(self) -> Tuple[int, ...]:
        """H^n 자유 랭크의 외대수 예측 C(d,n)·f_0^{d−n}·f_1^n"""
        f0, f1 = (self._free_rank(h) for h in self.one_variable)
        d = len(self.direct) - 1
        return tuple(math.comb(d, n) * f0 ** (d - n) * f1 ** n for n in range(d + 1))

    @property
    def exterior_matches(self) -> bool:
        return tuple(self._free_rank(h) for h in self.direct) == self.exterior_free_ranks

    def to_json(self) -> Dict[str, Any]:
        return {
            "direct": [list(x) for x in self.direct],
            "predicted": [list(x) for x in self.predicted],
            "one_variable": [list(x) for x in self.one_variable],
            "precision": self.precision,
            "matches": self.matches,
            "exterior_free_ranks": list(self.exterior_free_ranks),
            "exterior_matches": self.exterior_matches,
        }


def _tensor_power_maps(step: ChainMatrix, d: int) -> List[ChainMatrix]:
    ring, n = step.ring, step.nrows
    eye = ChainMatrix.identity(ring, n)
    maps = []
    for i in range(d):
        acc = ChainMatrix.identity(ring, 1)
        for k in range(d):
            acc = acc.kron(step if k == i else eye)
        maps.append(acc)
    return maps


def kunneth_pd_cohomology(ring: RingSpec, d: int, rho: CycloElem, D: int) -> KunnethReport:
    """
    A^{≤D} 의 d-겹 텐서 (상자 절단) 위 γ_1..γ_d 의 Koszul 코호몰로지와
    한 변수 답에서 만든 Künneth 예측 비교
    """
    one = MAlphaModule.trivial(ring, rho, 0, D)
    C1 = one.koszul()
    R1 = stable_precision(C1)
    h_one = [cohomology(C1, 0, R1).factors, cohomology(C1, 1, R1).factors]

    step = one.gamma_minus_one_matrix
    maps = _tensor_power_maps(step, d)
    K = koszul_complex(ring, (D + 1) ** d, maps)
    Rd = stable_precision(K)
    T = min(R1, Rd)
    direct = tuple(cohomology(K, n, Rd).factors for n in range(d + 1))

    predicted: List[List[int]] = [list(h_one[0]), list(h_one[1])]
    for _ in range(d - 1):
        predicted = kunneth_combine(predicted, h_one, R1)
    return KunnethReport(direct, tuple(tuple(x) for x in predicted), tuple(tuple(x) for x in h_one), T)


# ----- PD Higgs 분해 -----

@dataclass(frozen=True)
class ResolutionVerdict:
    factors: Tuple[Tuple[int, ...], ...]

    @property
    def exact(self) -> bool:
        return len(self.factors[0]) == 1 and all(not f for f in self.factors[1:])

    def to_json(self) -> Dict[str, Any]:
        return {"factors": [list(f) for f in self.factors], "exact": self.exact}


def higgs_resolution_check(ring: RingSpec, d: int, D: int) -> ResolutionVerdict:
    """
    A^{≤D−i} ⊗ ∧^i 위 정규화된 ∂_j 의 Koszul 복체: H^0 = A, 나머지 0

    i 번째 항의 절단을 D − i 로 두면 각 무게 성분이 온전히 남는다.
    """
    subsets = [list(combinations(range(d), k)) for k in range(d + 1)]
    blocks = [multi_indices(d, D - i) if D >= i else () for i in range(d + 1)]
    where = [{n: t for t, n in enumerate(level)} for level in blocks]
    ranks = tuple(len(blocks[i]) * len(subsets[i]) for i in range(d + 1))
    zero = CycloElem.zero(ring)
    one = CycloElem.one(ring)
    diffs = []
    for k in range(d):
        ns, nd = len(blocks[k]), len(blocks[k + 1])
        grid = [[zero] * ranks[k] for _ in range(ranks[k + 1])]
        pos = {I: t for t, I in enumerate(subsets[k + 1])}
        for a, I in enumerate(subsets[k]):
            for j in range(d):
                if j in I:
                    continue
                b = pos[tuple(sorted(I + (j,)))]
                entry = -one if sum(1 for x in I if x < j) % 2 else one
                for col, n in enumerate(blocks[k]):
                    if n[j] == 0:
                        continue
                    row = where[k + 1][n[:j] + (n[j] - 1,) + n[j + 1:]]
                    grid[b * nd + row][a * ns + col] = entry
        diffs.append(ChainMatrix(ring, ranks[k + 1], ranks[k], tuple(tuple(r) for r in grid)))
    C = FreeComplex(ring, 0, ranks, tuple(diffs))
    return ResolutionVerdict(tuple(cohomology(C, n).factors for n in range(d + 1)))


# ----- Lη -----

@dataclass(frozen=True)
class LetaVerdict:
    decalage: Tuple[Tuple[int, ...], ...]
    rescaled: Tuple[Tuple[int, ...], ...]
    plain: Tuple[Tuple[int, ...], ...]
    precision: int

    @property
    def agrees(self) -> bool:
        R = self.precision
        return all(capped_factors(a, R) == capped_factors(b, R) == capped_factors(c, R)
                   for a, b, c in zip(self.decalage, self.rescaled, self.plain))

    @property
    def h0_torsion_free(self) -> bool:
        return all(k >= self.precision for k in self.rescaled[0])

    @property
    def passed(self) -> bool:
        return self.agrees and self.h0_torsion_free

    def to_json(self) -> Dict[str, Any]:
        return {
            "decalage": [list(x) for x in self.decalage],
            "rescaled": [list(x) for x in self.rescaled],
            "plain": [list(x) for x in self.plain],
            "precision": self.precision,
            "agrees": self.agrees,
            "h0_torsion_free": self.h0_torsion_free,
        }


def local_leta_check(V: SmallRep, lam: CycloElem) -> LetaVerdict:
    """
    Lη_{(ζ_p−1)λ} K(V; γ_i − 1) 와 K(V; λ^{-1}Θ_iF(Θ_i)), K(V; λ^{-1}Θ_i) 비교

    Args:
        V: 작은 표현 (작업 링)
        lam: λ (0 ≤ val(λ) ≤ val(ρ), 작업 링)

    Returns:
        LetaVerdict
    """
    if lam.is_zero() or lam.valuation > V.rho.valuation:
        raise ValueError(f"val(lambda) must lie in [0, val(rho)] (got {lam.valuation})")
    target = V.reported
    eye_w = ChainMatrix.identity(V.ring, V.rank)
    steps_w = [m - eye_w for m in V.P]
    K = koszul_complex(target, V.rank, [s.reduce_to(target) for s in steps_w])
    R = stable_precision(K)
    eps = epsilon(V.ring)
    f = (lam * eps).reduce_to(target)
    dec = tuple(decalage_presentation(cohomology(K, n, R), f) for n in range(V.d + 1))
    shift = max(R - f.valuation, 0)

    rescaled = eta_koszul_rescale(steps_w, lam, scale=eps, target=target)
    S1 = stable_precision(rescaled)
    resc = tuple(cohomology(rescaled, n, S1).factors for n in range(V.d + 1))

    H, _ = rep_to_higgs(V, certify=False)
    plain_c = eta_koszul_rescale(list(H.thetas), lam.reduce_to(H.ring), target=target)
    S2 = stable_precision(plain_c)
    plain = tuple(cohomology(plain_c, n, S2).factors for n in range(V.d + 1))

    T = min(shift, S1, S2)
    return LetaVerdict(tuple(h.factors for h in dec), resc, plain, T)


# ----- 가중치 분해 -----

@dataclass(frozen=True)
class WeightSet:
    """유한한 다중 가중치 집합 (0 가중치 항상 포함)"""

    d: int
    weights: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        zero = (Fraction(0),) * self.d
        normalized = tuple(tuple(as_weight(a) for a in alpha) for alpha in self.weights)
        if any(len(alpha) != self.d for alpha in normalized):
            raise ValueError(f"every weight needs {self.d} components")
        if zero not in normalized:
            normalized = (zero,) + normalized
        object.__setattr__(self, "weights", tuple(dict.fromkeys(normalized)))

    @classmethod
    def grid(cls, p: int, d: int, level: int = 1, limit: Optional[int] = None) -> "WeightSet":
        steps = [Fraction(j, p ** level) for j in range(p ** level)]
        found = list(product(steps, repeat=d))
        return cls(d, tuple(found[:limit] if limit else found))

    def check_level(self, ring: RingSpec):
        for alpha in self.weights:
            for a in alpha:
                if a != 0 and weight_level(ring.p, a) > ring.s:
                    raise ValueError(f"weight {a} needs a higher cyclotomic level than {ring.s}")


@dataclass(frozen=True)
class IsotypicReport:
    pieces: Tuple[Tuple[Tuple[Fraction, ...], Tuple[Tuple[int, ...], ...], int], ...]
    killed: bool
    assembly: bool
    epsilon_valuation: int

    @property
    def passed(self) -> bool:
        return self.killed and self.assembly

    def to_json(self) -> Dict[str, Any]:
        return {
            "pieces": [
                {"alpha": [str(a) for a in alpha], "factors": [list(h) for h in hs], "precision": R}
                for alpha, hs, R in self.pieces
            ],
            "killed": self.killed,
            "assembly": self.assembly,
        }


def _direct_sum(complexes: Sequence[FreeComplex]) -> FreeComplex:
    ring = complexes[0].ring
    ranks = tuple(sum(C.ranks[k] for C in complexes) for k in range(len(complexes[0].ranks)))
    diffs = tuple(ChainMatrix.block_diag(ring, [C.differentials[k] for C in complexes])
                  for k in range(len(ranks) - 1))
    return FreeComplex(ring, 0, ranks, diffs)


def isotypic_cohomology(V: SmallRep, weights: WeightSet) -> IsotypicReport:
    """
    각 가중치 α 에 대해 K(V; ζ^{α_i}P_i − I) 의 코호몰로지

    α ≠ 0 인 조각은 H^0 이 신뢰 정밀도까지 자명하고 모든 H^i 가 ζ_p − 1 에 의해 소멸한다.
    직합 복체의 코호몰로지가 조각들의 직합임도 확인한다.
    """
    target = V.reported
    weights.check_level(target)
    P_t = V.reported_P()
    eye = ChainMatrix.identity(target, V.rank)
    k_eps = epsilon(target).valuation
    pieces = []
    complexes = []
    killed = True
    for alpha in weights.weights:
        maps = [P_t[i] * zeta_power(target, alpha[i]) - eye for i in range(V.d)]
        K = koszul_complex(target, V.rank, maps)
        complexes.append(K)
        R = stable_precision(K)
        hs = tuple(cohomology(K, n, R).factors for n in range(V.d + 1))
        pieces.append((alpha, hs, R))
        if any(a != 0 for a in alpha):
            if hs[0] or any(k > k_eps for h in hs for k in h):
                killed = False

    total = _direct_sum(complexes)
    T = min(stable_precision(total), min(R for _, _, R in pieces))
    assembly = True
    for n in range(V.d + 1):
        joined = capped_factors([k for _, hs, _ in pieces for k in hs[n]], T)
        assembly = assembly and cohomology(total, n, T).capped(T) == joined
    return IsotypicReport(tuple(pieces), killed, assembly, k_eps)
