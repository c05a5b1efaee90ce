"""
Decision stumps and the exhaustive stump search.

The candidate grid per feature is -inf followed by the midpoints of consecutive
distinct sorted values. Candidates are enumerated feature first, then threshold
ascending, then polarity +1 before -1; that enumeration order is the tie rule.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.hypotheses import HypothesisKind, WeakHypothesis, format_float
from multiboost.core.weights import WeightDistribution

logger = logging.getLogger(__name__)

# Candidates whose errors differ by no more than this are treated as tied.
TIE_TOL = 1e-12
# Same tie band on edges, since edge = 1 - 2 * error.
EDGE_TIE_TOL = 2.0 * TIE_TOL


@dataclass(frozen=True)
class DecisionStump(WeakHypothesis):
    """
    One-feature threshold classifier.

    Predicts `polarity` when x[feature] >= threshold and -polarity otherwise; a
    threshold of -inf is the constant classifier `polarity`.
    """

    feature: int
    threshold: float
    polarity: int

    kind = HypothesisKind.BINARY

    def __post_init__(self) -> None:
        if self.feature < 0:
            raise ValueError(f"Feature index must be >= 0, got {self.feature}")
        if self.polarity not in (1, -1):
            raise ValueError(f"Polarity must be +1 or -1, got {self.polarity}")

    def predict(self, X: np.ndarray) -> np.ndarray:
        column = np.asarray(X, dtype=np.float64)[:, self.feature]
        return np.where(column >= self.threshold, self.polarity, -self.polarity).astype(np.int64)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "stump",
            "feature": self.feature,
            "threshold": format_float(self.threshold),
            "polarity": self.polarity,
        }

    @property
    def hypothesis_id(self) -> str:
        sign = "+" if self.polarity > 0 else "-"
        return f"stump(f={self.feature},thr={format_float(self.threshold)},pol={sign}1)"


def first_within_tolerance(values: np.ndarray, tol: float = TIE_TOL) -> int:
    """Index of the first entry within `tol` of the minimum."""
    values = np.asarray(values, dtype=np.float64)
    best = values.min()
    return int(np.flatnonzero(values <= best + tol)[0])


@dataclass(frozen=True)
class FeatureCuts:
    """Sorted view of one feature and the cut positions of its threshold grid."""

    order: np.ndarray
    thresholds: np.ndarray  # -inf first, then midpoints ascending
    cuts: np.ndarray  # samples order[:cut] fall below the matching threshold


def feature_cuts(column: np.ndarray) -> FeatureCuts:
    order = np.argsort(column, kind="stable")
    xs = column[order]
    positions = np.flatnonzero(xs[1:] != xs[:-1]) + 1
    midpoints = (xs[positions - 1] + xs[positions]) / 2.0
    return FeatureCuts(
        order=order,
        thresholds=np.concatenate([[-np.inf], midpoints]),
        cuts=np.concatenate([[0], positions]).astype(np.int64),
    )


def mass_below(values: np.ndarray, cuts: FeatureCuts) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative sums of `values` up to each cut, and the grand total."""
    sorted_values = values[cuts.order]
    zero = np.zeros((1,) + sorted_values.shape[1:])
    cumulative = np.concatenate([zero, np.cumsum(sorted_values, axis=0)], axis=0)
    return cumulative[cuts.cuts], cumulative[-1]


def stump_errors(data: Dataset, w: np.ndarray) -> tuple[list[tuple[int, float, int]], np.ndarray]:
    """
    Weighted error of every grid stump, in tie order.

    Returns:
        Tuple of (candidates as (feature, threshold, polarity), errors)
    """
    positive = np.where(data.y == 1, w, 0.0)
    negative = np.where(data.y == -1, w, 0.0)

    candidates: list[tuple[int, float, int]] = []
    errors: list[np.ndarray] = []
    for feature in range(data.d):
        cuts = feature_cuts(data.X[:, feature])
        pos_below, pos_total = mass_below(positive, cuts)
        neg_below, neg_total = mass_below(negative, cuts)
        err_plus = pos_below + (neg_total - neg_below)
        err_minus = neg_below + (pos_total - pos_below)
        errors.append(np.column_stack([err_plus, err_minus]).ravel())
        for threshold in cuts.thresholds:
            candidates.append((feature, float(threshold), 1))
            candidates.append((feature, float(threshold), -1))
    return candidates, np.concatenate(errors)


def train_stump(data: Dataset, w: WeightDistribution) -> DecisionStump:
    """
    Stump with the smallest weighted error over the full candidate grid.

    Args:
        data: Binary dataset
        w: Sample weights on the simplex

    Returns:
        The first minimizer in tie order

    Example:
        >>> data = Dataset.from_arrays([[0.0], [1.0], [2.0]], [1, -1, 1])
        >>> train_stump(data, WeightDistribution.uniform(3)).hypothesis_id
        'stump(f=0,thr=-inf,pol=+1)'
    """
    data.require_binary("train_stump")
    candidates, errors = stump_errors(data, w.w)
    best = first_within_tolerance(errors)
    feature, threshold, polarity = candidates[best]
    logger.debug(f"Best stump f={feature} thr={threshold} pol={polarity} error={errors[best]:.6g}")
    return DecisionStump(feature=feature, threshold=threshold, polarity=polarity)


def stump_grid(data: Dataset) -> list[DecisionStump]:
    """Every candidate stump of the grid, in tie order."""
    grid = []
    for feature in range(data.d):
        for threshold in feature_cuts(data.X[:, feature]).thresholds:
            grid.append(DecisionStump(feature, float(threshold), 1))
            grid.append(DecisionStump(feature, float(threshold), -1))
    return grid


def grid_dichotomies(data: Dataset, grid: list[DecisionStump]) -> np.ndarray:
    """Matrix A of shape (m, n) with A[i, j] = y_i * h_j(x_i)."""
    data.require_binary("grid_dichotomies")
    predictions = np.column_stack([h.predict(data.X) for h in grid])
    return data.y[:, None].astype(np.float64) * predictions
