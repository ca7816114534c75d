"""
matrix.py

체인 링 위의 행렬과 벡터
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from rings.cyclo import CycloElem, RingSpec, exact_div

Vector = Tuple[CycloElem, ...]
Scalar = Union[CycloElem, int]


class MatrixShapeError(ValueError):
    """행렬 크기 불일치"""


class NotInvertibleError(ArithmeticError):
    """가역이 아닌 행렬의 역행렬 요청"""


def zero_vector(ring: RingSpec, n: int) -> Vector:
    z = CycloElem.zero(ring)
    return (z,) * n


def vec_add(u: Sequence[CycloElem], v: Sequence[CycloElem]) -> Vector:
    if len(u) != len(v):
        raise MatrixShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[CycloElem], v: Sequence[CycloElem]) -> Vector:
    if len(u) != len(v):
        raise MatrixShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[CycloElem]) -> Vector:
    return tuple(x * c for x in v)


def vec_is_zero(v: Sequence[CycloElem]) -> bool:
    return all(x.is_zero() for x in v)


@dataclass(frozen=True)
class ChainMatrix:
    """O_{s,N} 위의 nrows × ncols 행렬 (열벡터에 작용)"""

    ring: RingSpec
    nrows: int
    ncols: int
    entries: Tuple[Tuple[CycloElem, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.nrows or any(len(row) != self.ncols for row in self.entries):
            raise MatrixShapeError(f"entries do not form a {self.nrows}x{self.ncols} grid")

    # ----- 생성자 -----

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence[Scalar]], ncols: int = None) -> "ChainMatrix":
        grid = tuple(
            tuple(x if isinstance(x, CycloElem) else CycloElem.from_int(ring, x) for x in row)
            for row in rows
        )
        if ncols is None:
            ncols = len(grid[0]) if grid else 0
        return cls(ring, len(grid), ncols, grid)

    @classmethod
    def zeros(cls, ring: RingSpec, nrows: int, ncols: int) -> "ChainMatrix":
        z = CycloElem.zero(ring)
        return cls(ring, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "ChainMatrix":
        return cls.scalar(ring, n, CycloElem.one(ring))

    @classmethod
    def scalar(cls, ring: RingSpec, n: int, c: Scalar) -> "ChainMatrix":
        c = c if isinstance(c, CycloElem) else CycloElem.from_int(ring, c)
        return cls.diagonal(ring, [c] * n)

    @classmethod
    def diagonal(cls, ring: RingSpec, values: Sequence[CycloElem]) -> "ChainMatrix":
        z = CycloElem.zero(ring)
        n = len(values)
        return cls(ring, n, n, tuple(tuple(values[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, ring: RingSpec, columns: Sequence[Sequence[CycloElem]], nrows: int) -> "ChainMatrix":
        if not columns:
            return cls.zeros(ring, nrows, 0)
        return cls(ring, nrows, len(columns), tuple(zip(*columns)))

    # ----- 접근 -----

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key: Tuple[int, int]) -> CycloElem:
        i, j = key
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def reliable(self) -> int:
        return min((x.precision for row in self.entries for x in row), default=self.ring.max_val)

    def min_valuation(self) -> int:
        return min((x.valuation for row in self.entries for x in row), default=self.ring.max_val)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == ChainMatrix.identity(self.ring, self.nrows)

    # ----- 산술 -----

    def _check_same(self, other: "ChainMatrix"):
        if other.ring != self.ring or other.shape != self.shape:
            raise MatrixShapeError(f"shape/ring mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "ChainMatrix") -> "ChainMatrix":
        self._check_same(other)
        return ChainMatrix(self.ring, self.nrows, self.ncols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "ChainMatrix") -> "ChainMatrix":
        self._check_same(other)
        return ChainMatrix(self.ring, self.nrows, self.ncols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> "ChainMatrix":
        return ChainMatrix(self.ring, self.nrows, self.ncols, tuple(tuple(-a for a in row) for row in self.entries))

    def __mul__(self, c: Scalar) -> "ChainMatrix":
        return ChainMatrix(self.ring, self.nrows, self.ncols, tuple(tuple(a * c for a in row) for row in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, ChainMatrix):
            return self.matmul(other)
        return self.apply(other)

    def matmul(self, other: "ChainMatrix") -> "ChainMatrix":
        if other.ring != self.ring or self.ncols != other.nrows:
            raise MatrixShapeError(f"cannot multiply {self.shape} by {other.shape}")
        zero = CycloElem.zero(self.ring)
        rows = []
        for row in self.entries:
            acc = [zero] * other.ncols
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.entries[k]):
                    if not b.is_zero():
                        acc[j] = acc[j] + a * b
            rows.append(tuple(acc))
        return ChainMatrix(self.ring, self.nrows, other.ncols, tuple(rows))

    def apply(self, vector: Sequence[CycloElem]) -> Vector:
        if len(vector) != self.ncols:
            raise MatrixShapeError(f"vector of length {len(vector)} for {self.shape} matrix")
        zero = CycloElem.zero(self.ring)
        out = []
        for row in self.entries:
            acc = zero
            for a, x in zip(row, vector):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __pow__(self, n: int) -> "ChainMatrix":
        if n < 0:
            return self.inverse() ** (-n)
        result = ChainMatrix.identity(self.ring, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result.matmul(base)
            base = base.matmul(base)
            n >>= 1
        return result

    def transpose(self) -> "ChainMatrix":
        return ChainMatrix(self.ring, self.ncols, self.nrows, tuple(zip(*self.entries)) if self.nrows else
                           tuple(() for _ in range(self.ncols)))

    def commutes_with(self, other: "ChainMatrix") -> bool:
        return self.matmul(other) == other.matmul(self)

    def kron(self, other: "ChainMatrix") -> "ChainMatrix":
        """크로네커 곱 (self 의 인덱스가 바깥쪽)"""
        rows = []
        for r1 in self.entries:
            for r2 in other.entries:
                rows.append(tuple(a * b for a in r1 for b in r2))
        return ChainMatrix(self.ring, self.nrows * other.nrows, self.ncols * other.ncols, tuple(rows))

    def map_entries(self, fn) -> "ChainMatrix":
        return ChainMatrix(self.ring, self.nrows, self.ncols, tuple(tuple(fn(a) for a in row) for row in self.entries))

    def lift(self, ring: RingSpec) -> "ChainMatrix":
        return ChainMatrix(ring, self.nrows, self.ncols, tuple(tuple(a.lift(ring) for a in row) for row in self.entries))

    def reduce_to(self, ring: RingSpec) -> "ChainMatrix":
        return ChainMatrix(ring, self.nrows, self.ncols,
                           tuple(tuple(a.reduce_to(ring) for a in row) for row in self.entries))

    def divide_scalar(self, lam: CycloElem) -> "ChainMatrix":
        """원소별 exact_div (λ 가 모든 성분을 나누어야 함)"""
        return self.map_entries(lambda a: exact_div(a, lam))

    def inverse(self) -> "ChainMatrix":
        """단원 피벗 Gauss-Jordan 소거로 역행렬 계산"""
        if self.nrows != self.ncols:
            raise NotInvertibleError("non-square matrix")
        n = self.nrows
        ring = self.ring
        left = [list(row) for row in self.entries]
        right = [list(row) for row in ChainMatrix.identity(ring, n).entries]
        for c in range(n):
            pivot = next((r for r in range(c, n) if left[r][c].is_unit()), None)
            if pivot is None:
                raise NotInvertibleError(f"no unit pivot in column {c}")
            left[c], left[pivot] = left[pivot], left[c]
            right[c], right[pivot] = right[pivot], right[c]
            inv = left[c][c].inverse()
            left[c] = [a * inv for a in left[c]]
            right[c] = [a * inv for a in right[c]]
            for r in range(n):
                f = left[r][c]
                if r == c or f.is_zero():
                    continue
                left[r] = [a - f * b for a, b in zip(left[r], left[c])]
                right[r] = [a - f * b for a, b in zip(right[r], right[c])]
        return ChainMatrix(ring, n, n, tuple(tuple(row) for row in right))

    # ----- 블록 구성 -----

    @staticmethod
    def block_diag(ring: RingSpec, blocks: Sequence["ChainMatrix"]) -> "ChainMatrix":
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        z = CycloElem.zero(ring)
        rows = []
        offset = 0
        for b in blocks:
            for row in b.entries:
                rows.append((z,) * offset + tuple(row) + (z,) * (ncols - offset - b.ncols))
            offset += b.ncols
        return ChainMatrix(ring, nrows, ncols, tuple(rows))

    # ----- 직렬화 -----

    def to_json(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.to_json(),
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[list(a.coeffs) for a in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ChainMatrix":
        from rings.cyclo import make_ring

        r = data["ring"]
        ring = make_ring(int(r["p"]), int(r["s"]), int(r["N"]))
        grid = tuple(tuple(CycloElem(ring, tuple(int(c) % ring.modulus for c in a)) for a in row)
                     for row in data["entries"])
        return cls(ring, int(data["rows"]), int(data["cols"]), grid)


def commute_pairwise(matrices: Iterable[ChainMatrix]) -> bool:
    mats = list(matrices)
    return all(mats[i].commutes_with(mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats)))
