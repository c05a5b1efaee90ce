"""
Agreement between weak hypotheses: similarity, diversity and Cohen's kappa.
"""

import logging
from typing import Sequence

import numpy as np
from sklearn.metrics import confusion_matrix

from multiboost.core.dataset import Dataset
from multiboost.core.errors import KindMismatchError
from multiboost.core.hypotheses import HypothesisKind, WeakHypothesis

logger = logging.getLogger(__name__)


def _binary_predictions(hs: Sequence[WeakHypothesis], data: Dataset) -> np.ndarray:
    for h in hs:
        if h.kind is not HypothesisKind.BINARY:
            raise KindMismatchError(f"Similarity needs binary hypotheses, got {h.kind.value}")
    return np.vstack([h.predict(data.X) for h in hs]).astype(np.float64)


def similarity(h1: WeakHypothesis, h2: WeakHypothesis, data: Dataset) -> float:
    """sim(h1, h2) = 1/m sum_i h1(x_i) h2(x_i), in [-1, 1]."""
    predictions = _binary_predictions([h1, h2], data)
    return float(np.mean(predictions[0] * predictions[1]))


def similarity_matrix(hs: Sequence[WeakHypothesis], data: Dataset) -> np.ndarray:
    predictions = _binary_predictions(hs, data)
    return predictions @ predictions.T / data.m


def diversity(hs: Sequence[WeakHypothesis], data: Dataset, unordered: bool = False) -> float:
    """
    Diversity 1 - 2 / (T (T + 1)) * sum of pairwise similarities.

    By default the sum runs over ordered pairs t != s, so the value can exceed 1
    (the pair (h, -h) gives 5/3). With `unordered=True` it runs over pairs t <= s,
    which is the count the normalizer corresponds to.

    Raises:
        ValueError: If fewer than two hypotheses are given.
    """
    T = len(hs)
    if T < 2:
        raise ValueError(f"Diversity needs at least 2 hypotheses, got {T}")
    sims = similarity_matrix(hs, data)
    if unordered:
        total = float(np.sum(np.triu(sims)))
    else:
        total = float(np.sum(sims) - np.trace(sims))
    return 1.0 - 2.0 / (T * (T + 1)) * total


def diversity_curve(hs: Sequence[WeakHypothesis], data: Dataset, unordered: bool = False) -> np.ndarray:
    """Diversity of every prefix of length 2..T."""
    return np.array([diversity(hs[:T], data, unordered) for T in range(2, len(hs) + 1)])


def kappa_from_predictions(a: np.ndarray, b: np.ndarray) -> float:
    """
    Cohen's kappa (p_o - p_e) / (1 - p_e) of two label vectors.

    When chance agreement is certain (both constant and equal) kappa is 1.

    Example:
        >>> kappa_from_predictions(np.array([1, 1, 0, 0]), np.array([1, 0, 1, 0]))
        0.0
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"Prediction vectors differ in shape: {a.shape} vs {b.shape}")
    labels = np.union1d(a, b)
    matrix = confusion_matrix(a, b, labels=labels).astype(np.float64)
    n = matrix.sum()
    observed = np.trace(matrix) / n
    expected = float(np.sum(matrix.sum(axis=1) * matrix.sum(axis=0))) / n**2
    if expected >= 1.0:
        return 1.0
    return float((observed - expected) / (1.0 - expected))


def kappa(h1: WeakHypothesis, h2: WeakHypothesis, data: Dataset) -> float:
    """Cohen's kappa between the predictions of two hypotheses on the data."""
    return kappa_from_predictions(h1.predict(data.X), h2.predict(data.X))


def kappa_matrix(hs: Sequence[WeakHypothesis], data: Dataset) -> np.ndarray:
    predictions = [h.predict(data.X) for h in hs]
    T = len(hs)
    matrix = np.eye(T)
    for t in range(T):
        for s in range(t + 1, T):
            matrix[t, s] = matrix[s, t] = kappa_from_predictions(predictions[t], predictions[s])
    return matrix


def mean_pairwise_kappa(hs: Sequence[WeakHypothesis], data: Dataset) -> float:
    """Mean kappa over unordered pairs t < s; NaN when there is no pair to compare."""
    if len(hs) < 2:
        return float("nan")
    matrix = kappa_matrix(hs, data)
    return float(np.mean(matrix[np.triu_indices(len(hs), k=1)]))
