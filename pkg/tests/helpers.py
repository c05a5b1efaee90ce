"""Dataset generators shared by the test modules."""

import numpy as np

from multiboost.core.dataset import BINARY_CLASSES, Dataset


def random_binary_dataset(seed: int, max_m: int = 40, max_d: int = 3, levels: int = 6) -> Dataset:
    """Small binary dataset on a coarse integer grid, so stump ties are common."""
    rng = np.random.default_rng(seed)
    m = int(rng.integers(4, max_m + 1))
    d = int(rng.integers(1, max_d + 1))
    X = rng.integers(0, levels, size=(m, d)).astype(np.float64)
    y = rng.choice([-1, 1], size=m)
    return Dataset(X=X, y=y, classes=BINARY_CLASSES)
