"""
공통 fixture (작은 링, 시드 고정 난수)
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from rings.cyclo import make_ring


@pytest.fixture
def ring():
    """Z[ζ_3]/9 (e = 2, max_val = 4)"""
    return make_ring(3, 1, 2)


@pytest.fixture
def tiny_ring():
    """Z[ζ_3]/3 = F_3[π]/π² (전수 검사용)"""
    return make_ring(3, 1, 1)


@pytest.fixture
def deep_ring():
    return make_ring(3, 1, 3)


@pytest.fixture
def level_two_ring():
    """Z[ζ_9]/9 (e = 6)"""
    return make_ring(3, 2, 2)


@pytest.fixture
def rng():
    return random.Random(20240611)
