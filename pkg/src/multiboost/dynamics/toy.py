"""
Two-dimensional toy problem on which stump AdaBoost cycles.

Label +1 iff x1 <= 1/4 or x2 <= 1/4 or x2 >= 3/4, else -1.
"""

import numpy as np

from multiboost.core.dataset import BINARY_CLASSES, Dataset


def toy_label(x1: float | np.ndarray, x2: float | np.ndarray) -> np.ndarray:
    positive = (np.asarray(x1) <= 0.25) | (np.asarray(x2) <= 0.25) | (np.asarray(x2) >= 0.75)
    return np.where(positive, 1, -1)


def toy_dataset(n_per_axis: int) -> Dataset:
    """
    Regular n x n grid on [0, 1]^2 labelled by toy_label.

    Raises:
        ValueError: If n_per_axis < 2.
    """
    if n_per_axis < 2:
        raise ValueError(f"Grid needs at least 2 points per axis, got {n_per_axis}")
    axis = np.linspace(0.0, 1.0, n_per_axis)
    x1, x2 = np.meshgrid(axis, axis, indexing="ij")
    X = np.column_stack([x1.ravel(), x2.ravel()])
    return Dataset(X=X, y=toy_label(X[:, 0], X[:, 1]), classes=BINARY_CLASSES, feature_names=("x1", "x2"))
