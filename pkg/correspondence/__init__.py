"""
correspondence 패키지 초기화
"""

from .simpson import (
    CocycleError, SmallnessError, SmallRep, SmallHiggs, WeightSet,
    rep_to_higgs, higgs_to_rep, round_trip, tensor_dual_check, kunneth_pd_cohomology,
    higgs_resolution_check, local_leta_check, isotypic_cohomology, wang_normalization,
)
from .truncation import (
    HiggsCocycle, m_omega_solver, higgs_h1_to_koszul_h1, truncation_one_check,
)

__all__ = [
    'CocycleError',
    'SmallnessError',
    'SmallRep',
    'SmallHiggs',
    'WeightSet',
    'rep_to_higgs',
    'higgs_to_rep',
    'round_trip',
    'tensor_dual_check',
    'kunneth_pd_cohomology',
    'higgs_resolution_check',
    'local_leta_check',
    'isotypic_cohomology',
    'wang_normalization',
    'HiggsCocycle',
    'm_omega_solver',
    'higgs_h1_to_koszul_h1',
    'truncation_one_check',
]
