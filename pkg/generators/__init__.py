"""
generators 패키지 초기화
"""

from .models import Job, TrialRecord, Summary, Report, SuiteReport, COMMAND_KINDS

__all__ = ['Job', 'TrialRecord', 'Summary', 'Report', 'SuiteReport', 'COMMAND_KINDS']
