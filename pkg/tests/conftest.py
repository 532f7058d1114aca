#!/usr/bin/env python3
"""
Shared fixtures for the Calogero polynomial tests
"""

import os
import sys
from fractions import Fraction

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.scalars import Params


# ============================================
# Test Fixtures
# ============================================

@pytest.fixture
def hermite_1():
    """Type A, one variable, omega = 1"""
    return Params('A', 1)


@pytest.fixture
def hermite_2():
    """Type A, two variables, g0 = 1, omega = 1"""
    return Params('A', 2, g0=1)


@pytest.fixture
def laguerre_1():
    """Type B, one variable, g1 = 1, omega = 1"""
    return Params('B', 1, g1=1)


@pytest.fixture
def laguerre_2():
    """Type B, two variables, g0 = 1, g1 = 0, omega = 1"""
    return Params('B', 2, g0=1)


@pytest.fixture
def rng():
    """Seeded generator for randomized property tests"""
    return np.random.default_rng(20240501)


@pytest.fixture
def half():
    return Fraction(1, 2)
