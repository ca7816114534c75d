"""
truncation.py

차수 ≤ 1 비교: Higgs 1-코사이클 ω 로부터 m(ω) 구성, Koszul H^1 으로의 사상,
τ≤1 HIG(H) ≃ τ≤1 Lη_{ρ(ζ_p−1)} K(V; γ_i − 1) 검증
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from algebras.lognil import LogNilpRep
from algebras.pdalg import MultiIndex, PDAlgebraSpec, module_gamma_matrix, module_theta_matrix, multi_indices
from analyzers.complexes import (
    FreeComplex, capped_factors, cohomology, decalage_presentation, eta_koszul_rescale,
    image_presentation, kernel_generators, koszul_complex, stable_precision,
)
from correspondence.simpson import CocycleError, SmallRep, exp_coefficients, rep_to_higgs
from rings.cyclo import CycloElem, epsilon
from rings.matrix import ChainMatrix, Vector, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vector


@dataclass(frozen=True)
class HiggsCocycle:
    """ω = Σ x_i ⊗ (ρΩ^1 기저): 각 x_i 는 H 의 벡터"""

    xs: Tuple[Vector, ...]

    @property
    def d(self) -> int:
        return len(self.xs)

    def check(self, thetas: Sequence[ChainMatrix]) -> bool:
        """Θ_i x_j = Θ_j x_i"""
        for i in range(self.d):
            for j in range(i + 1, self.d):
                if thetas[i].apply(self.xs[j]) != thetas[j].apply(self.xs[i]):
                    return False
        return True

    def flat(self) -> Vector:
        return tuple(x for v in self.xs for x in v)

    @classmethod
    def from_flat(cls, vector: Sequence[CycloElem], r: int) -> "HiggsCocycle":
        return cls(tuple(tuple(vector[i * r:(i + 1) * r]) for i in range(len(vector) // r)))

    def reduce_to(self, ring) -> "HiggsCocycle":
        return HiggsCocycle(tuple(tuple(x.reduce_to(ring) for x in v) for v in self.xs))


def higgs_complex(H: LogNilpRep) -> FreeComplex:
    """HIG(H, θ_H) = K(H; ρ^{-1}Θ_i), 보고 정밀도로 축약"""
    return eta_koszul_rescale(list(H.thetas), H.rho, target=H.reported)


def random_cocycle(H: LogNilpRep, rng) -> HiggsCocycle:
    """작업 링에서 HIG 1-코사이클의 무작위 선형 결합"""
    primes = [t.divide_scalar(H.rho) for t in H.thetas]
    K = koszul_complex(H.ring, H.rank, primes)
    gens = kernel_generators(K.differential(1)) if H.d > 1 else [
        tuple(CycloElem.one(H.ring) if k == j else CycloElem.zero(H.ring) for k in range(H.rank))
        for j in range(H.rank)
    ]
    acc = zero_vector(H.ring, H.rank * H.d)
    for g in gens:
        c = CycloElem.from_int(H.ring, rng.randrange(H.ring.modulus))
        acc = vec_add(acc, vec_scale(c, g))
    return HiggsCocycle.from_flat(acc, H.rank)


# ----- m(ω) -----

@dataclass(frozen=True)
class MOmega:
    """m(ω) = Σ h_n ρ^{|n|}Y^{[n]} 의 계수와 검증 결과"""

    spec: PDAlgebraSpec
    coefficients: Dict[MultiIndex, Vector]
    bridge: bool
    gamma_relation: bool

    @property
    def passed(self) -> bool:
        return self.bridge and self.gamma_relation

    def flat(self) -> Vector:
        return tuple(x for n in self.spec.indices for x in self.coefficients[n])

    def to_json(self) -> Dict[str, Any]:
        return {"bridge": self.bridge, "gamma_relation": self.gamma_relation, "D": self.spec.D}


def _unit(n: MultiIndex, i: int, step: int) -> MultiIndex:
    return n[:i] + (n[i] + step,) + n[i + 1:]


def m_omega_solver(H: LogNilpRep, omega: HiggsCocycle, h0: Optional[Vector] = None, D: int = 4,
                   degree_guard: Optional[int] = None) -> MOmega:
    """
    Θ_M(m) = ρ·ω 를 푸는 m ∈ H ⊗ A^{≤D}

    h_{1_i} = −ρ^{-1}Θ_i h_0 + x_i, |n| ≥ 1 이면 h_{n+1_i} = −ρ^{-1}Θ_i h_n.
    모든 선행자 경로가 같은 값을 주어야 하며 아니면 CocycleError.

    Args:
        H: 작은 Higgs 가군 (작업 링)
        omega: 작업 링의 1-코사이클
        h0: 상수항 (기본 0)
        D: PD 절단 차수
        degree_guard: (γ_i − 1)m 비교에서 제외할 최상위 차수 수 (기본 d + 1)

    Returns:
        MOmega (보고 정밀도로 축약)
    """
    if omega.d != H.d:
        raise CocycleError(f"cocycle has {omega.d} components, expected {H.d}")
    if not omega.check(H.thetas):
        raise CocycleError("Theta_i x_j != Theta_j x_i")
    ring = H.ring
    primes = [t.divide_scalar(H.rho) for t in H.thetas]
    h: Dict[MultiIndex, Vector] = {}
    zero = (0,) * H.d
    h[zero] = tuple(h0) if h0 is not None else zero_vector(ring, H.rank)
    target = H.reported
    for n in multi_indices(H.d, D):
        if n == zero:
            continue
        values = []
        for i in range(H.d):
            if n[i] == 0:
                continue
            prev = _unit(n, i, -1)
            value = tuple(-a for a in primes[i].apply(h[prev]))
            if prev == zero:
                value = vec_add(value, omega.xs[i])
            values.append(value)
        first = values[0]
        for other in values[1:]:
            if any(a.reduce_to(target) != b.reduce_to(target) for a, b in zip(first, other)):
                raise CocycleError(f"coefficient {n} depends on the path")
        h[n] = first

    spec = PDAlgebraSpec(target, H.d, H.rho.reduce_to(target), D)
    coeffs = {n: tuple(x.reduce_to(target) for x in v) for n, v in h.items()}
    m = tuple(x for n in spec.indices for x in coeffs[n])
    thetas_t = [t.reduce_to(target) for t in H.thetas]
    rho_t = spec.rho
    xs_t = omega.reduce_to(target).xs
    r = H.rank

    bridge = True
    for i in range(H.d):
        out = module_theta_matrix(spec, i, thetas_t[i]).apply(m)
        for t, n in enumerate(spec.indices):
            if sum(n) > D - 1:
                continue
            expected = vec_scale(rho_t, xs_t[i]) if sum(n) == 0 else zero_vector(target, r)
            if tuple(out[t * r:(t + 1) * r]) != expected:
                bridge = False

    guard = H.d + 1 if degree_guard is None else degree_guard
    gamma_ok = True
    eye = ChainMatrix.identity(target, r)
    eps = epsilon(target)
    base = h[zero]
    for i in range(H.d):
        lhs = (module_gamma_matrix(spec, i, eye) - ChainMatrix.identity(target, spec.rank * r)).apply(m)
        source = H.F[i].apply(vec_sub(omega.xs[i], primes[i].apply(base)))
        expo = exp_coefficients(H.thetas, H.rho, source, D, sign=-1)
        scale = -(rho_t * eps)
        for t, n in enumerate(spec.indices):
            if sum(n) > D - guard:
                continue
            expected = vec_scale(scale, tuple(x.reduce_to(target) for x in expo[n]))
            if tuple(lhs[t * r:(t + 1) * r]) != expected:
                gamma_ok = False
    return MOmega(spec, coeffs, bridge, gamma_ok)


# ----- H^1 사상 -----

@dataclass(frozen=True)
class KoszulImage:
    v_prime: Vector
    v: Vector
    cocycle: bool


def _koszul_cocycle(P: Sequence[ChainMatrix], flat: Vector, r: int) -> bool:
    eye = ChainMatrix.identity(P[0].ring, r)
    K = koszul_complex(P[0].ring, r, [m - eye for m in P])
    return vec_is_zero(K.differential(1).apply(flat))


def higgs_h1_to_koszul_h1(H: LogNilpRep, omega: HiggsCocycle) -> KoszulImage:
    """
    ω ↦ v' = (F(Θ_i)x_i)_i, v = −ρ(ζ_p−1)v'

    v' 와 v 는 K(V; γ_i − 1) 의 1-코사이클이어야 하며 아니면 CocycleError.
    """
    if not omega.check(H.thetas):
        raise CocycleError("Theta_i x_j != Theta_j x_i")
    v_prime = tuple(x for i in range(H.d) for x in H.F[i].apply(omega.xs[i]))
    v = vec_scale(-(H.rho * epsilon(H.ring)), v_prime)
    if not (_koszul_cocycle(H.P, v_prime, H.rank) and _koszul_cocycle(H.P, v, H.rank)):
        raise CocycleError("image is not a Koszul 1-cocycle")
    return KoszulImage(v_prime, v, True)


def coboundary_check(H: LogNilpRep, h: Vector) -> bool:
    """x_i = Θ_i h 의 상 v 가 −ρh 의 Koszul 경계와 같음"""
    omega = HiggsCocycle(tuple(t.apply(h) for t in H.thetas))
    image = higgs_h1_to_koszul_h1(H, omega)
    eye = ChainMatrix.identity(H.ring, H.rank)
    K = koszul_complex(H.ring, H.rank, [m - eye for m in H.P])
    boundary = K.differential(0).apply(vec_scale(-H.rho, h))
    return image.v == boundary


# ----- τ≤1 비교 -----

@dataclass(frozen=True)
class TruncationReport:
    """HIG(H) 와 Lη_{ρε} K(V; γ_i − 1) 의 차수 0, 1 (및 자료로서 2) 비교"""

    h0_higgs: Tuple[int, ...]
    h0_gamma: Tuple[int, ...]
    h1_higgs: Tuple[int, ...]
    h1_decalage: Tuple[int, ...]
    h1_image: Tuple[int, ...]
    precision: int
    degree_two: Optional[Dict[str, Any]] = None

    def _cap(self, xs) -> List[int]:
        return capped_factors(xs, self.precision)

    @property
    def degree_zero(self) -> bool:
        return self._cap(self.h0_higgs) == self._cap(self.h0_gamma)

    @property
    def bijective(self) -> bool:
        return self._cap(self.h1_higgs) == self._cap(self.h1_decalage)

    @property
    def image_fills(self) -> bool:
        return self._cap(self.h1_image) == self._cap(self.h1_decalage)

    @property
    def passed(self) -> bool:
        return self.degree_zero and self.bijective and self.image_fills

    def to_json(self) -> Dict[str, Any]:
        return {
            "h0_higgs": list(self.h0_higgs),
            "h0_gamma": list(self.h0_gamma),
            "h1_higgs": list(self.h1_higgs),
            "h1_decalage": list(self.h1_decalage),
            "h1_image": list(self.h1_image),
            "precision": self.precision,
            "degree_zero": self.degree_zero,
            "bijective": self.bijective,
            "image_fills": self.image_fills,
            "degree_two": self.degree_two,
        }


def truncation_one_check(V: Union[SmallRep, LogNilpRep], with_degree_two: bool = True) -> TruncationReport:
    """
    τ≤1 비교

    (a) H^0 가 일치, (b) H^1(HIG) 의 불변 인자가 ρεH^1(K) 와 일치,
    (c) ω ↦ v 가 H^1(HIG) 의 생성원을 ρεH^1(K) 전체로 보냄.

    SmallRep 이 주어지면 로그로 Higgs 가군을 먼저 복원한다.
    """
    H = V if isinstance(V, LogNilpRep) else rep_to_higgs(V, certify=False)[0]
    target = H.reported
    eye = ChainMatrix.identity(target, H.rank)
    P_t = [m.reduce_to(target) for m in H.P]
    K = koszul_complex(target, H.rank, [m - eye for m in P_t])
    R = stable_precision(K)
    f = (H.rho * epsilon(H.ring)).reduce_to(target)
    h0_gamma = cohomology(K, 0, R)
    dec1 = decalage_presentation(cohomology(K, 1, R), f)

    HIG = higgs_complex(H)
    S = stable_precision(HIG)
    h0_hig = cohomology(HIG, 0, S)
    h1_hig = cohomology(HIG, 1, S)

    F_t = [m.reduce_to(target) for m in H.F]
    images = []
    for rep in h1_hig.representatives:
        xs = [tuple(rep[i * H.rank:(i + 1) * H.rank]) for i in range(H.d)]
        images.append(tuple(-(f * x) for i in range(H.d) for x in F_t[i].apply(xs[i])))
    image_pres = image_presentation(K, 1, images, R)

    T = min(S, max(R - f.valuation, 0))
    degree_two = degree_two_comparison(K, HIG, R, S, f) if with_degree_two and H.d >= 2 else None
    return TruncationReport(
        h0_higgs=h0_hig.factors,
        h0_gamma=h0_gamma.factors,
        h1_higgs=h1_hig.factors,
        h1_decalage=dec1.factors,
        h1_image=image_pres.factors,
        precision=T,
        degree_two=degree_two,
    )


def degree_two_comparison(K: FreeComplex, HIG: FreeComplex, R: int, S: int,
                          f: CycloElem) -> Dict[str, Any]:
    """차수 2 비교는 자료로만 보고한다 (판정에 쓰지 않음)"""
    T = min(S, max(R - f.valuation, 0))
    higgs = cohomology(HIG, 2, S).factors
    dec = decalage_presentation(cohomology(K, 2, R), f).factors
    return {
        "higgs": list(higgs),
        "decalage": list(dec),
        "precision": T,
        "agree": capped_factors(higgs, T) == capped_factors(dec, T),
    }
