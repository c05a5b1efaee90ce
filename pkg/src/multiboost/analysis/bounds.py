"""Training error and its product bound."""

from typing import Sequence

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.ensemble import Ensemble


def _check_epsilons(epsilons: Sequence[float]) -> np.ndarray:
    values = np.asarray(epsilons, dtype=np.float64)
    if np.any((values < 0.0) | (values > 1.0)):
        raise ValueError("Every weighted error must lie in [0, 1]")
    return values


def training_error_bound(epsilons: Sequence[float]) -> float:
    """
    prod_t 2 sqrt(eps_t (1 - eps_t)).

    Example:
        >>> round(training_error_bound([1 / 3]), 5)
        0.94281
    """
    values = _check_epsilons(epsilons)
    return float(np.prod(2.0 * np.sqrt(values * (1.0 - values))))


def bound_curve(epsilons: Sequence[float]) -> np.ndarray:
    """Bound after each prefix of rounds."""
    values = _check_epsilons(epsilons)
    return np.cumprod(2.0 * np.sqrt(values * (1.0 - values)))


def training_error(ens: Ensemble, data: Dataset) -> float:
    return float(np.mean(ens.predict_batch(data.X) != data.y))
