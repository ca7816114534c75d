"""
utils 패키지 초기화
"""

from .file_utils import *

__all__ = [
    'JobFileError',
    'read_job',
    'write_json',
    'append_jsonl',
    'write_csv_summary',
]
