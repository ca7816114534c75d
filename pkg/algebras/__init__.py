"""
algebras 패키지 초기화
"""

from .pdalg import (
    PDAlgebraSpec, PDElem, PDError, pd_mul, gamma_act, higgs_theta,
    gamma_pd_matrix, theta_pd_matrix, module_gamma_matrix, module_theta_matrix,
    PeriodModel, build_period_model,
)
from .lognil import (
    LogNilpRep, MAlphaModule, MAlphaElem, GammaCohomology,
    NonTerminatingSeriesError, PrecisionError, WitnessError, RepresentationError,
    exp_neg_e_theta, f_series, f_inverse, theta_alpha, log_unipotent,
    gamma_minus_one, g_V, g_V_inverse, f_V, v_theta_rho_member, exp_theta_X,
    gamma_cohomology_M_alpha, pd_gamma_cohomology, coho_principle_h1, coho_principle_triangle,
)
from .qr_machine import (
    QRMachine, q_matrices, r_fixed_point, recursion_equivalence_check, small_case_preimage,
)

__all__ = [
    'PDAlgebraSpec',
    'PDElem',
    'PDError',
    'pd_mul',
    'gamma_act',
    'higgs_theta',
    'gamma_pd_matrix',
    'theta_pd_matrix',
    'module_gamma_matrix',
    'module_theta_matrix',
    'PeriodModel',
    'build_period_model',
    'LogNilpRep',
    'MAlphaModule',
    'MAlphaElem',
    'GammaCohomology',
    'NonTerminatingSeriesError',
    'PrecisionError',
    'WitnessError',
    'RepresentationError',
    'exp_neg_e_theta',
    'f_series',
    'f_inverse',
    'theta_alpha',
    'log_unipotent',
    'gamma_minus_one',
    'g_V',
    'g_V_inverse',
    'f_V',
    'v_theta_rho_member',
    'exp_theta_X',
    'gamma_cohomology_M_alpha',
    'pd_gamma_cohomology',
    'coho_principle_h1',
    'coho_principle_triangle',
    'QRMachine',
    'q_matrices',
    'r_fixed_point',
    'recursion_equivalence_check',
    'small_case_preimage',
]
