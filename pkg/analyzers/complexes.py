"""
complexes.py

자유 가군의 유계 복체, Koszul 복체, 코호몰로지 표현과 Lη (décalage)
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from analyzers.smith import smith_normal_form
from rings.cyclo import CycloElem, DivisionError, RingSpec, divide_by_pi_power, uniformizer
from rings.matrix import ChainMatrix, Vector, zero_vector


class ComplexError(ValueError):
    """d² ≠ 0, 비가환 사상, 랭크 불일치"""


@dataclass(frozen=True)
class FreeComplex:
    """
    유계 복체 C^{lo} → … → C^{hi}

    differentials[k] 는 d^{lo+k}: C^{lo+k} → C^{lo+k+1} (열벡터 규약).
    reliable 은 미분 성분이 적분적 복체와 일치하는 π-단계 수.
    """

    ring: RingSpec
    lo: int
    ranks: Tuple[int, ...]
    differentials: Tuple[ChainMatrix, ...]
    reliable: Optional[int] = None

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ComplexError("number of differentials must be len(ranks) - 1")
        for k, d in enumerate(self.differentials):
            if d.shape != (self.ranks[k + 1], self.ranks[k]):
                raise ComplexError(f"d^{self.lo + k} has shape {d.shape}, "
                                   f"expected {(self.ranks[k + 1], self.ranks[k])}")
        for k in range(len(self.differentials) - 1):
            if not self.differentials[k + 1].matmul(self.differentials[k]).is_zero():
                raise ComplexError(f"d^{self.lo + k + 1} ∘ d^{self.lo + k} != 0")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    @property
    def precision(self) -> int:
        return self.ring.max_val if self.reliable is None else min(self.reliable, self.ring.max_val)

    def rank(self, n: int) -> int:
        if n < self.lo or n > self.hi:
            return 0
        return self.ranks[n - self.lo]

    def differential(self, n: int) -> ChainMatrix:
        """d^n (범위 밖이면 영행렬)"""
        if self.lo <= n < self.hi:
            return self.differentials[n - self.lo]
        return ChainMatrix.zeros(self.ring, self.rank(n + 1), self.rank(n))

    def reduce_to(self, ring: RingSpec) -> "FreeComplex":
        return FreeComplex(ring, self.lo, self.ranks,
                           tuple(d.reduce_to(ring) for d in self.differentials),
                           None if self.reliable is None else min(self.reliable, ring.max_val))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (self.lo + k) * r for k, r in enumerate(self.ranks))

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.to_json(),
            "lo": self.lo,
            "ranks": list(self.ranks),
            "differentials": [d.to_json() for d in self.differentials],
            "reliable": self.precision,
        }


@dataclass(frozen=True)
class ModulePresentation:
    """⊕ O/(π^{k_i}) 와 각 직합 성분의 대표 벡터"""

    ring: RingSpec
    factors: Tuple[int, ...]
    representatives: Tuple[Vector, ...] = field(compare=False)
    reliable_precision: int

    @property
    def length(self) -> int:
        return sum(self.factors)

    def free_rank(self) -> int:
        """신뢰 정밀도까지 자유인 성분의 수"""
        return sum(1 for f in self.factors if f >= self.reliable_precision)

    def capped(self, precision: int) -> List[int]:
        return capped_factors(self.factors, precision)

    def to_json(self) -> Dict[str, Any]:
        return {
            "factors": list(self.factors),
            "reliable_precision": self.reliable_precision,
            "representatives": [[list(x.coeffs) for x in v] for v in self.representatives],
        }


def capped_factors(factors: Sequence[int], precision: int) -> List[int]:
    return sorted(min(k, precision) for k in factors if min(k, precision) > 0)


@dataclass(frozen=True)
class _KernelData:
    V: ChainMatrix
    V_inv: ChainMatrix
    shifts: Tuple[int, ...]   # ker d = V·(⊕ π^{c_i} O)


def _kernel_data(d: ChainMatrix) -> _KernelData:
    ring = d.ring
    n = d.ncols
    if d.nrows == 0 or n == 0:
        eye = ChainMatrix.identity(ring, n)
        return _KernelData(eye, eye, (0,) * n)
    form = smith_normal_form(d)
    shifts = []
    for i in range(n):
        k = form.exponents[i] if i < len(form.exponents) else ring.max_val
        shifts.append(ring.max_val - k if k < ring.max_val else 0)
    return _KernelData(form.V, form.V_inv, tuple(shifts))


def kernel_generators(d: ChainMatrix) -> List[Vector]:
    """ker d 의 생성원 π^{c_i}·V e_i"""
    data = _kernel_data(d)
    pi = uniformizer(d.ring)
    gens = []
    for i, c in enumerate(data.shifts):
        if c >= d.ring.max_val:
            continue
        scale = pi ** c
        gens.append(tuple(x * scale for x in data.V.column(i)))
    return gens


def _kernel_coordinates(data: _KernelData, vectors: Sequence[Vector]) -> List[List[CycloElem]]:
    """벡터들을 커널 생성원 좌표로 표현 (행: 생성원, 열: 벡터)"""
    ring = data.V.ring
    m = len(data.shifts)
    coords = [[CycloElem.zero(ring)] * len(vectors) for _ in range(m)]
    for j, vec in enumerate(vectors):
        y = data.V_inv.apply(vec)
        for i in range(m):
            try:
                coords[i][j] = divide_by_pi_power(y[i], data.shifts[i]).with_reliable(None)
            except DivisionError as exc:
                raise ComplexError(f"vector {j} is not a cocycle") from exc
    return coords


def _relation_matrix(data: _KernelData, image_coords: List[List[CycloElem]], precision: int) -> ChainMatrix:
    ring = data.V.ring
    pi = uniformizer(ring)
    m = len(data.shifts)
    zero = CycloElem.zero(ring)
    rows = []
    for i in range(m):
        diag = [zero] * m
        diag[i] = pi ** max(precision - data.shifts[i], 0)
        rows.append(tuple(image_coords[i]) + tuple(diag))
    return ChainMatrix(ring, m, (len(image_coords[0]) if m else 0) + m, tuple(rows))


def _present_cokernel(rel: ChainMatrix, to_ambient, precision: int) -> Tuple[Tuple[int, ...], Tuple[Vector, ...]]:
    form = smith_normal_form(rel)
    factors, reps = [], []
    for i in range(rel.nrows):
        k = min(form.exponents[i], precision) if i < len(form.exponents) else precision
        if k <= 0:
            continue
        factors.append(k)
        reps.append(to_ambient(form.U_inv.column(i)))
    order = sorted(range(len(factors)), key=lambda t: factors[t])
    return tuple(factors[t] for t in order), tuple(reps[t] for t in order)


def cohomology(C: FreeComplex, n: int, precision: Optional[int] = None) -> ModulePresentation:
    """
    H^n(C) = ker d^n / (im d^{n-1} + ker d^n ∩ π^R C^n) 의 표현

    precision R 의 기본값은 N·e_s 이며, 이때 결과는 유한 링 위의 문자 그대로의
    코호몰로지이다. R 이 작으면 R 과 같은 인자는 "정밀도 R 까지 자유" 를 뜻한다.

    Args:
        C: 복체
        n: 차수
        precision: π-단계 정밀도 R

    Returns:
        ModulePresentation
    """
    ring = C.ring
    R = ring.max_val if precision is None else min(precision, ring.max_val)
    m = C.rank(n)
    reliable = min(R, C.precision)
    if m == 0:
        return ModulePresentation(ring, (), (), reliable)

    data = _kernel_data(C.differential(n))
    incoming = C.differential(n - 1)
    image_coords = _kernel_coordinates(data, incoming.columns()) if incoming.ncols else [[] for _ in range(m)]
    rel = _relation_matrix(data, image_coords, R)
    pi = uniformizer(ring)

    def to_ambient(z: Vector) -> Vector:
        y = tuple(z[i] * (pi ** data.shifts[i]) for i in range(m))
        return data.V.apply(y)

    factors, reps = _present_cokernel(rel, to_ambient, R)
    return ModulePresentation(ring, factors, reps, reliable)


def image_presentation(C: FreeComplex, n: int, vectors: Sequence[Vector],
                       precision: Optional[int] = None) -> ModulePresentation:
    """
    H^n(C) 안에서 주어진 코사이클들의 클래스가 생성하는 부분가군의 표현
    """
    ring = C.ring
    R = ring.max_val if precision is None else min(precision, ring.max_val)
    reliable = min(R, C.precision)
    t = len(vectors)
    m = C.rank(n)
    if t == 0 or m == 0:
        return ModulePresentation(ring, (), (), reliable)

    data = _kernel_data(C.differential(n))
    incoming = C.differential(n - 1)
    image_coords = _kernel_coordinates(data, incoming.columns()) if incoming.ncols else [[] for _ in range(m)]
    rel = _relation_matrix(data, image_coords, R)
    w = _kernel_coordinates(data, vectors)

    # {x : W x ∈ im Rel} = ker[W | Rel] 의 처음 t 좌표 사영
    block = ChainMatrix(ring, m, t + rel.ncols, tuple(tuple(w[i]) + rel.entries[i] for i in range(m)))
    projected = [g[:t] for g in kernel_generators(block)]
    relations = ChainMatrix.from_columns(ring, projected, t) if projected else ChainMatrix.zeros(ring, t, 0)
    pi = uniformizer(ring)
    relations = ChainMatrix(ring, t, relations.ncols + t, tuple(
        relations.entries[i] + tuple(pi ** R if i == j else CycloElem.zero(ring) for j in range(t))
        for i in range(t)))

    def to_ambient(x: Vector) -> Vector:
        out = zero_vector(ring, m)
        for coeff, vec in zip(x, vectors):
            if not coeff.is_zero():
                out = tuple(a + coeff * b for a, b in zip(out, vec))
        return out

    factors, reps = _present_cokernel(relations, to_ambient, R)
    return ModulePresentation(ring, factors, reps, reliable)


def stable_precision(C: FreeComplex) -> int:
    """
    유한 모델이 H^{n+1} 의 꼬임에서 만드는 가짜 클래스가 사라지는 정밀도

    복체의 신뢰 정밀도에서 미분들의 유한 불변 인자 최댓값을 뺀 값.
    """
    top = C.precision
    worst = 0
    for d in C.differentials:
        if d.nrows == 0 or d.ncols == 0 or d.is_zero():
            continue
        form = smith_normal_form(d)
        finite = [k for k in form.exponents if k < top]
        if finite:
            worst = max(worst, max(finite))
    return max(top - worst, 0)


def koszul_complex(ring: RingSpec, rank: int, maps: Sequence[ChainMatrix],
                   reliable: Optional[int] = None) -> FreeComplex:
    """
    K(V; φ_1, …, φ_d): 차수 i 항은 V ⊗ ∧^i O^d (랭크 r·C(d,i))

    기저 e_I 는 크기 i 의 부분집합 I (사전식 순서), V-좌표가 안쪽 인덱스.
    d(v ⊗ e_I) = Σ_{j∉I} (−1)^{#{k∈I : k<j}} φ_j(v) ⊗ e_{I∪{j}}
    """
    d = len(maps)
    for i in range(d):
        if maps[i].shape != (rank, rank):
            raise ComplexError(f"map {i} has shape {maps[i].shape}, expected {(rank, rank)}")
        for j in range(i + 1, d):
            if not maps[i].commutes_with(maps[j]):
                raise ComplexError(f"maps {i} and {j} do not commute")

    subsets = [list(combinations(range(d), k)) for k in range(d + 1)]
    index = [{I: t for t, I in enumerate(level)} for level in subsets]
    zero = CycloElem.zero(ring)
    diffs = []
    for k in range(d):
        nrows = rank * len(subsets[k + 1])
        ncols = rank * len(subsets[k])
        grid = [[zero] * ncols for _ in range(nrows)]
        for I in subsets[k]:
            col = index[k][I] * rank
            for j in range(d):
                if j in I:
                    continue
                J = tuple(sorted(I + (j,)))
                sign = -1 if sum(1 for x in I if x < j) % 2 else 1
                row = index[k + 1][J] * rank
                phi = maps[j]
                for a in range(rank):
                    for b in range(rank):
                        entry = phi[a, b]
                        if not entry.is_zero():
                            grid[row + a][col + b] = entry if sign == 1 else -entry
        diffs.append(ChainMatrix(ring, nrows, ncols, tuple(tuple(r) for r in grid)))
    ranks = tuple(rank * len(level) for level in subsets)
    return FreeComplex(ring, 0, ranks, tuple(diffs), reliable)


def decalage_presentation(H: ModulePresentation, f: CycloElem) -> ModulePresentation:
    """H / H[f]: 인자 k 는 k − val(f) 로 줄어들고 k ≤ val(f) 인 성분은 사라진다"""
    if f.is_zero():
        raise ValueError("décalage by zero")
    v = f.valuation
    kept = [(k - v, rep) for k, rep in zip(H.factors, H.representatives) if k > v]
    return ModulePresentation(
        H.ring,
        tuple(k for k, _ in kept),
        tuple(rep for _, rep in kept),
        max(H.reliable_precision - v, 0),
    )


def decalage_cohomology(C: FreeComplex, f: CycloElem, n: int,
                        precision: Optional[int] = None) -> ModulePresentation:
    """H^n(Lη_f C) ≅ H^n(C)/H^n(C)[f]"""
    return decalage_presentation(cohomology(C, n, precision), f)


def eta_koszul_rescale(maps: Sequence[ChainMatrix], lam: CycloElem, scale: Optional[CycloElem] = None,
                       target: Optional[RingSpec] = None) -> FreeComplex:
    """
    K(V; φ_1/(ελ), …) 구성 (φ_i = ε·Θ_i 이면 결과는 K(V; λ^{-1}Θ_i))

    target 이 주어지면 나눗셈은 입력 링의 정밀도에서 수행하고 결과를 target 으로 축약한다.

    Args:
        maps: 가환 사상 φ_i (입력 링)
        lam: λ
        scale: ε (선택)
        target: 축약할 링 (같은 p, s, 더 낮은 N)

    Returns:
        FreeComplex
    """
    if not maps:
        raise ComplexError("at least one map is required")
    ring = maps[0].ring
    divisor = lam * scale if scale is not None else lam
    v = divisor.valuation
    quotients = [m.divide_scalar(divisor) for m in maps]
    reliable = ring.max_val - v
    if target is not None:
        quotients = [q.reduce_to(target) for q in quotients]
        reliable = min(target.max_val, reliable)
        ring = target
    rank = quotients[0].nrows
    return koszul_complex(ring, rank, quotients, reliable)
