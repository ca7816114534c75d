"""
rings 패키지 초기화
"""

from .cyclo import (
    RingSpec, CycloElem, RingError, DivisionError,
    make_ring, mul, pi_valuation, exact_div, divided_power_epsilon,
    zeta_power, epsilon, uniformizer,
)
from .matrix import ChainMatrix, MatrixShapeError, NotInvertibleError

__all__ = [
    'RingSpec',
    'CycloElem',
    'RingError',
    'DivisionError',
    'make_ring',
    'mul',
    'pi_valuation',
    'exact_div',
    'divided_power_epsilon',
    'zeta_power',
    'epsilon',
    'uniformizer',
    'ChainMatrix',
    'MatrixShapeError',
    'NotInvertibleError',
]
