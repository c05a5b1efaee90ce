"""
Shared fixtures.
"""

import numpy as np
import pytest

from multiboost.core.dataset import Dataset


@pytest.fixture
def d1_data():
    """Three points on a line labelled +1, -1, +1."""
    return Dataset.from_arrays([[0.0], [1.0], [2.0]], [1, -1, 1])


@pytest.fixture
def multiclass_data():
    """Three well separated groups on one feature."""
    X = [[0.0], [0.1], [0.2], [1.0], [1.1], [1.2], [2.0], [2.1], [2.2]]
    y = [0, 0, 0, 1, 1, 1, 2, 2, 2]
    return Dataset.from_arrays(X, y)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
