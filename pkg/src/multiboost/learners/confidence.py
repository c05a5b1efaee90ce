"""
Confidence-rated stumps for real-valued binary boosting.

Each side of the split outputs 1/2 log((W+ + delta) / (W- + delta)), the
half log-odds of the weight on that side. The split minimizes the normalizer
Z = 2 sum_sides sqrt(W+ W-).
"""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.hypotheses import HypothesisKind, WeakHypothesis, format_float
from multiboost.core.weights import WeightDistribution
from multiboost.learners.stumps import feature_cuts, first_within_tolerance, mass_below


@dataclass(frozen=True)
class ConfidenceStump(WeakHypothesis):
    """Real-valued stump: `right_value` when x[feature] >= threshold, else `left_value`."""

    feature: int
    threshold: float
    left_value: float
    right_value: float

    kind = HypothesisKind.CONFIDENCE

    def predict(self, X: np.ndarray) -> np.ndarray:
        column = np.asarray(X, dtype=np.float64)[:, self.feature]
        return np.where(column >= self.threshold, self.right_value, self.left_value)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "confidence_stump",
            "feature": self.feature,
            "threshold": format_float(self.threshold),
            "left_value": self.left_value,
            "right_value": self.right_value,
        }

    @property
    def hypothesis_id(self) -> str:
        return (
            f"cstump(f={self.feature},thr={format_float(self.threshold)},"
            f"left={format_float(self.left_value)},right={format_float(self.right_value)})"
        )


def train_confidence_stump(
    data: Dataset, w: WeightDistribution, smoothing: Optional[float] = None
) -> ConfidenceStump:
    """
    Split minimizing Z with smoothed half log-odds leaf values.

    Args:
        data: Binary dataset
        w: Sample weights
        smoothing: delta added to both side masses (default 1/(2m))
    """
    data.require_binary("train_confidence_stump")
    delta = smoothing if smoothing is not None else 1.0 / (2 * data.m)
    masses = np.column_stack([np.where(data.y == 1, w.w, 0.0), np.where(data.y == -1, w.w, 0.0)])

    candidates: list[tuple[int, float, float, float]] = []
    scores: list[np.ndarray] = []
    for feature in range(data.d):
        cuts = feature_cuts(data.X[:, feature])
        below, total = mass_below(masses, cuts)
        above = total[None, :] - below
        scores.append(
            2.0 * (np.sqrt(below[:, 0] * below[:, 1]) + np.sqrt(above[:, 0] * above[:, 1]))
        )
        left = 0.5 * np.log((below[:, 0] + delta) / (below[:, 1] + delta))
        right = 0.5 * np.log((above[:, 0] + delta) / (above[:, 1] + delta))
        for k, threshold in enumerate(cuts.thresholds):
            # no sample lies below -inf
            left_value = float(right[k]) if k == 0 else float(left[k])
            candidates.append((feature, float(threshold), left_value, float(right[k])))

    feature, threshold, left_value, right_value = candidates[first_within_tolerance(np.concatenate(scores))]
    return ConfidenceStump(feature, threshold, left_value, right_value)
