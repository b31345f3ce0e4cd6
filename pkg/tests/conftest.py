# tests/conftest.py
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from matpair.models import Tolerances  # noqa: E402
from matpair.sampling import sample  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long randomized sweeps (deselect with -m 'not slow')")


@pytest.fixture
def tol():
    return Tolerances()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def pairs_n3(tol):
    """Ten seeded members of size 3, conjugated out of the chart frame."""
    return sample(3, 10, seed=7, tol=tol, conjugated=True)
