"""
작은 링 위의 전수 검사 오라클
"""

from functools import lru_cache
from itertools import product
from typing import List, Set, Tuple

from rings.cyclo import CycloElem, RingSpec, elements_of, uniformizer
from rings.matrix import ChainMatrix


@lru_cache(maxsize=None)
def all_elements(ring: RingSpec) -> Tuple[CycloElem, ...]:
    return tuple(elements_of(ring))


def brute_valuation(a: CycloElem) -> int:
    """a ∈ π^k O 인 최대 k (정의 그대로)"""
    ring = a.ring
    pi = uniformizer(ring)
    for k in range(ring.max_val, -1, -1):
        scale = pi ** k
        if any(scale * c == a for c in all_elements(ring)):
            return k
    return 0


def vectors(ring: RingSpec, n: int):
    return product(all_elements(ring), repeat=n)


def brute_image(M: ChainMatrix) -> Set[Tuple[CycloElem, ...]]:
    return {M.apply(x) for x in vectors(M.ring, M.ncols)}


def brute_kernel(M: ChainMatrix) -> List[Tuple[CycloElem, ...]]:
    return [x for x in vectors(M.ring, M.ncols) if all(y.is_zero() for y in M.apply(x))]


def brute_cohomology_order(d_in: ChainMatrix, d_out: ChainMatrix) -> int:
    """|ker d_out| / |im d_in|"""
    return len(brute_kernel(d_out)) // len(brute_image(d_in))


def order_of(factors, p: int) -> int:
    """⊕ O/π^k 의 크기 (잉여체 F_p)"""
    return p ** sum(factors)
