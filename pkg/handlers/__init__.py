"""
handlers 패키지 초기화
"""

from .check_handler import CHECKS, run_trial
from .selftest import run_selftest, corrupted_arithmetic

__all__ = ['CHECKS', 'run_trial', 'run_selftest', 'corrupted_arithmetic']
