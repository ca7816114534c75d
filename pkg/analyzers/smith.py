"""
smith.py

체인 링 위의 Smith 표준형
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from rings.cyclo import divide_by_pi_power, unit_part
from rings.matrix import ChainMatrix


@dataclass(frozen=True)
class SmithForm:
    """U·M·V = D, D = diag(π^{k_1}, π^{k_2}, …) (k_1 ≤ k_2 ≤ …)"""

    U: ChainMatrix
    D: ChainMatrix
    V: ChainMatrix
    U_inv: ChainMatrix
    V_inv: ChainMatrix
    exponents: Tuple[int, ...]

    def rank(self, cap: Optional[int] = None) -> int:
        """cap 미만의 불변 인자 개수 (기본: 0 이 아닌 대각 성분 수)"""
        bound = self.D.ring.max_val if cap is None else cap
        return sum(1 for k in self.exponents if k < bound)

    def verify(self, M: ChainMatrix) -> bool:
        ring = M.ring
        m, n = M.shape
        if self.U.matmul(M).matmul(self.V) != self.D:
            return False
        for i in range(m):
            for j in range(n):
                if i != j and not self.D[i, j].is_zero():
                    return False
        eye_m = ChainMatrix.identity(ring, m)
        eye_n = ChainMatrix.identity(ring, n)
        return (self.U.matmul(self.U_inv) == eye_m and self.U_inv.matmul(self.U) == eye_m
                and self.V.matmul(self.V_inv) == eye_n and self.V_inv.matmul(self.V) == eye_n)


def _swap_rows(rows: List[list], a: int, b: int):
    rows[a], rows[b] = rows[b], rows[a]


def _swap_cols(rows: List[list], a: int, b: int):
    for row in rows:
        row[a], row[b] = row[b], row[a]


def smith_normal_form(M: ChainMatrix) -> SmithForm:
    """
    Smith 표준형 계산

    피벗은 항상 π-valuation 이 최소인 성분이며, 동률은 행 우선 순서로 정한다.

    Args:
        M: 입력 행렬

    Returns:
        SmithForm (U, V 의 양쪽 역행렬 포함)
    """
    ring = M.ring
    m, n = M.shape
    A = [list(row) for row in M.entries]
    U = [list(row) for row in ChainMatrix.identity(ring, m).entries]
    U_inv = [list(row) for row in ChainMatrix.identity(ring, m).entries]
    V = [list(row) for row in ChainMatrix.identity(ring, n).entries]
    V_inv = [list(row) for row in ChainMatrix.identity(ring, n).entries]
    floor = 0

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a.is_zero():
                    continue
                v = a.valuation
                if best is None or v < best[0]:
                    best = (v, i, j)
                    if v == floor:
                        break
            if best is not None and best[0] == floor:
                break
        if best is None:
            break
        k, pi_, pj = best
        floor = k

        _swap_rows(A, t, pi_)
        _swap_rows(U, t, pi_)
        _swap_cols(U_inv, t, pi_)
        _swap_cols(A, t, pj)
        _swap_cols(V, t, pj)
        _swap_rows(V_inv, t, pj)

        _, u = unit_part(A[t][t])
        u_inv = u.inverse()
        A[t] = [a * u_inv for a in A[t]]
        U[t] = [a * u_inv for a in U[t]]
        for row in U_inv:
            row[t] = row[t] * u

        for i in range(t + 1, m):
            a = A[i][t]
            if a.is_zero():
                continue
            f = divide_by_pi_power(a, k)
            A[i] = [x - f * y for x, y in zip(A[i], A[t])]
            U[i] = [x - f * y for x, y in zip(U[i], U[t])]
            for row in U_inv:
                row[t] = row[t] + f * row[i]

        for j in range(t + 1, n):
            a = A[t][j]
            if a.is_zero():
                continue
            g = divide_by_pi_power(a, k)
            for row in A:
                row[j] = row[j] - g * row[t]
            for row in V:
                row[j] = row[j] - g * row[t]
            V_inv[t] = [x + g * y for x, y in zip(V_inv[t], V_inv[j])]

    exponents = tuple(A[i][i].valuation for i in range(min(m, n)))
    to_matrix = lambda rows, r, c: ChainMatrix(ring, r, c, tuple(tuple(row) for row in rows))
    return SmithForm(
        U=to_matrix(U, m, m),
        D=to_matrix(A, m, n),
        V=to_matrix(V, n, n),
        U_inv=to_matrix(U_inv, m, m),
        V_inv=to_matrix(V_inv, n, n),
        exponents=exponents,
    )


def invariant_factors(M: ChainMatrix) -> List[int]:
    """0 이 아닌 불변 인자의 π-지수 (오름차순)"""
    form = smith_normal_form(M)
    return [k for k in form.exponents if k < M.ring.max_val]
