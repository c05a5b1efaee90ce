"""
Multiclass stumps: one label per side of a threshold.

Used by AdaBoost.M1 (weighted error) and by real AdaBoost (pseudo-loss, through
one-hot plausibilities). The threshold grid and feature order match the binary
stump search; within a threshold the cheapest label on each side wins, ties to
the lowest label.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.hypotheses import (
    HypothesisKind,
    OneHotPlausibility,
    WeakHypothesis,
    format_float,
)
from multiboost.core.weights import PairWeightDistribution, WeightDistribution
from multiboost.learners.stumps import (
    feature_cuts,
    first_within_tolerance,
    mass_below,
    train_stump,
)


@dataclass(frozen=True)
class MulticlassStump(WeakHypothesis):
    """Predicts `right_label` when x[feature] >= threshold, `left_label` otherwise."""

    feature: int
    threshold: float
    left_label: int
    right_label: int

    kind = HypothesisKind.MULTICLASS

    def predict(self, X: np.ndarray) -> np.ndarray:
        column = np.asarray(X, dtype=np.float64)[:, self.feature]
        return np.where(column >= self.threshold, self.right_label, self.left_label).astype(np.int64)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "multiclass_stump",
            "feature": self.feature,
            "threshold": format_float(self.threshold),
            "left_label": self.left_label,
            "right_label": self.right_label,
        }

    @property
    def hypothesis_id(self) -> str:
        return (
            f"mstump(f={self.feature},thr={format_float(self.threshold)},"
            f"left={self.left_label},right={self.right_label})"
        )


def _best_split(data: Dataset, side_cost) -> MulticlassStump:
    """
    Scan the grid; side_cost(below, total) returns per-cut cost matrices (n_cuts, K)
    for the lower and upper side.
    """
    classes = np.asarray(data.classes)
    candidates: list[tuple[int, float, int, int]] = []
    costs: list[np.ndarray] = []
    for feature in range(data.d):
        cuts = feature_cuts(data.X[:, feature])
        cost_below, cost_above = side_cost(cuts)
        left = np.argmin(cost_below, axis=1)
        right = np.argmin(cost_above, axis=1)
        rows = np.arange(len(cuts.cuts))
        costs.append(cost_below[rows, left] + cost_above[rows, right])
        for k, threshold in enumerate(cuts.thresholds):
            # Nothing lies below -inf; the left label mirrors the right one.
            left_label = classes[right[k]] if k == 0 else classes[left[k]]
            candidates.append((feature, float(threshold), int(left_label), int(classes[right[k]])))
    best = first_within_tolerance(np.concatenate(costs))
    feature, threshold, left_label, right_label = candidates[best]
    return MulticlassStump(feature, threshold, left_label, right_label)


def train_multiclass_stump(data: Dataset, w: WeightDistribution) -> MulticlassStump:
    """
    Multiclass stump minimizing the weighted error sum_i w_i 1[h(x_i) != y_i].
    """
    onehot = np.zeros((data.m, data.K))
    onehot[np.arange(data.m), data.label_index] = w.w

    def side_cost(cuts):
        below, total = mass_below(onehot, cuts)
        above = total[None, :] - below
        # error on a side = side mass minus mass of the chosen label
        return below.sum(axis=1, keepdims=True) - below, above.sum(axis=1, keepdims=True) - above

    return _best_split(data, side_cost)


def train_plausibility_stump(data: Dataset, pw: PairWeightDistribution) -> OneHotPlausibility:
    """
    One-hot plausibility stump minimizing the pseudo-loss.

    For binary data the pseudo-loss of a one-hot stump equals its weighted error
    under the marginal D(i) = sum_y W(i, y), so the binary stump search is reused.
    For K > 2, a sample on a side labelled c costs q_i + W(i, c) when c != y_i.
    """
    if data.is_binary:
        return OneHotPlausibility(train_stump(data, pw.marginal()), data.classes)

    q = pw.w.sum(axis=1)
    own = np.zeros((data.m, data.K))
    own[np.arange(data.m), data.label_index] = q

    def side_cost(cuts):
        own_below, own_total = mass_below(own, cuts)
        pw_below, pw_total = mass_below(pw.w, cuts)
        q_below = own_below.sum(axis=1, keepdims=True)
        q_total = own_total.sum()
        below = q_below - own_below + pw_below
        above = (q_total - q_below) - (own_total[None, :] - own_below) + (pw_total[None, :] - pw_below)
        return below, above

    return OneHotPlausibility(_best_split(data, side_cost), data.classes)
