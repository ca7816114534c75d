"""
config 패키지 초기화
"""

from .settings import *
