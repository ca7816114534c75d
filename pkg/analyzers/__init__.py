"""
analyzers 패키지 초기화
"""

from .smith import SmithForm, smith_normal_form, invariant_factors
from .complexes import (
    ComplexError, FreeComplex, ModulePresentation,
    cohomology, image_presentation, stable_precision, koszul_complex,
    decalage_cohomology, decalage_presentation, eta_koszul_rescale,
    capped_factors, kernel_generators,
)

__all__ = [
    'SmithForm',
    'smith_normal_form',
    'invariant_factors',
    'ComplexError',
    'FreeComplex',
    'ModulePresentation',
    'cohomology',
    'image_presentation',
    'stable_precision',
    'koszul_complex',
    'decalage_cohomology',
    'decalage_presentation',
    'eta_koszul_rescale',
    'capped_factors',
    'kernel_generators',
]
