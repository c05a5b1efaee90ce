"""
Depth-bounded decision trees as weak learners.

Trees are grown by scikit-learn's weighted-Gini DecisionTreeClassifier and then
copied into plain arrays, so prediction, hashing and trace serialization do not
depend on the fitted estimator object.
"""

import hashlib
import json
import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from sklearn.tree import DecisionTreeClassifier

from multiboost.core.dataset import BINARY_CLASSES, Dataset
from multiboost.core.hypotheses import HypothesisKind, WeakHypothesis
from multiboost.core.weights import PairWeightDistribution, WeightDistribution

logger = logging.getLogger(__name__)

LEAF = -1


def _leaf_labels(values: np.ndarray, classes: tuple[int, ...]) -> np.ndarray:
    if classes == BINARY_CLASSES:
        # weighted majority, ties -> +1
        return np.where(values[:, 1] >= values[:, 0], 1, -1).astype(np.int64)
    return np.asarray(classes, dtype=np.int64)[np.argmax(values, axis=1)]


@dataclass(frozen=True, eq=False)
class DecisionTree(WeakHypothesis):
    """
    Axis-aligned binary tree; samples with x[feature] <= threshold go left.

    Attributes:
        depth: Declared maximum depth
        classes: Label set of the training data
        children_left, children_right: Child node indices, -1 at leaves
        feature, threshold: Split of each internal node
        values: Weighted class mass per node, shape (n_nodes, K)
    """

    depth: int
    classes: tuple[int, ...]
    children_left: np.ndarray
    children_right: np.ndarray
    feature: np.ndarray
    threshold: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError(f"Tree depth must be >= 1, got {self.depth}")
        for name in ("children_left", "children_right", "feature", "threshold", "values"):
            array = np.array(getattr(self, name), copy=True)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.actual_depth > self.depth:
            raise ValueError(f"Tree has depth {self.actual_depth} > declared {self.depth}")

    @property
    def kind(self) -> HypothesisKind:  # type: ignore[override]
        return HypothesisKind.BINARY if self.classes == BINARY_CLASSES else HypothesisKind.MULTICLASS

    @property
    def actual_depth(self) -> int:
        deepest = 0
        stack = [(0, 0)]
        while stack:
            node, level = stack.pop()
            if self.children_left[node] == LEAF:
                deepest = max(deepest, level)
            else:
                stack.append((int(self.children_left[node]), level + 1))
                stack.append((int(self.children_right[node]), level + 1))
        return deepest

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by every row of X."""
        X = np.asarray(X, dtype=np.float64)
        node = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.arange(X.shape[0])
        for _ in range(self.actual_depth):
            internal = self.children_left[node] != LEAF
            go_left = X[rows, np.maximum(self.feature[node], 0)] <= self.threshold[node]
            nxt = np.where(go_left, self.children_left[node], self.children_right[node])
            node = np.where(internal, nxt, node)
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        return _leaf_labels(self.values, self.classes)[self.apply(X)]

    def leaf_distribution(self, X: np.ndarray) -> np.ndarray:
        """Normalized class mass of the reached leaf, shape (n, K)."""
        values = self.values[self.apply(X)]
        totals = values.sum(axis=1, keepdims=True)
        uniform = np.full_like(values, 1.0 / values.shape[1])
        return np.divide(values, totals, out=uniform, where=totals > 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "tree",
            "depth": self.depth,
            "classes": list(self.classes),
            "children_left": self.children_left.tolist(),
            "children_right": self.children_right.tolist(),
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "values": self.values.tolist(),
        }

    @property
    def hypothesis_id(self) -> str:
        structure = {k: v for k, v in self.to_dict().items() if k != "values"}
        structure["leaf_labels"] = _leaf_labels(self.values, self.classes).tolist()
        payload = json.dumps(structure, sort_keys=True, separators=(",", ":"))
        return f"tree(d={self.depth}):{hashlib.sha1(payload.encode('utf-8')).hexdigest()[:12]}"


@dataclass(frozen=True, eq=False)
class LeafPlausibility(WeakHypothesis):
    """Plausibility h(x, y) given by the class distribution of the reached leaf."""

    tree: DecisionTree

    kind = HypothesisKind.PLAUSIBILITY

    def plausibility(self, X: np.ndarray) -> np.ndarray:
        return self.tree.leaf_distribution(X)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.tree.predict(X)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "leaf_plausibility", "tree": self.tree.to_dict()}

    @property
    def hypothesis_id(self) -> str:
        return f"leafplaus({self.tree.hypothesis_id})"


def train_tree(data: Dataset, w: WeightDistribution, depth: int, random_state: int = 0) -> DecisionTree:
    """
    Greedy weighted-Gini tree of bounded depth.

    Args:
        data: Binary or multiclass dataset
        w: Sample weights on the simplex
        depth: Maximum depth (>= 1)
        random_state: Seed for scikit-learn's feature permutation

    Returns:
        Frozen DecisionTree copied from the fitted estimator
    """
    if depth < 1:
        raise ValueError(f"Tree depth must be >= 1, got {depth}")

    clf = DecisionTreeClassifier(criterion="gini", max_depth=depth, random_state=random_state)
    clf.fit(data.X, data.y, sample_weight=w.w)
    structure = clf.tree_

    # scikit-learn only keeps columns for labels present in y
    raw = structure.value[:, 0, :]
    values = np.zeros((structure.node_count, data.K))
    for column, label in enumerate(clf.classes_):
        values[:, data.classes.index(int(label))] = raw[:, column]

    tree = DecisionTree(
        depth=depth,
        classes=data.classes,
        children_left=structure.children_left.astype(np.int64),
        children_right=structure.children_right.astype(np.int64),
        feature=structure.feature.astype(np.int64),
        threshold=structure.threshold.astype(np.float64),
        values=values,
    )
    logger.debug(f"Trained tree depth={tree.actual_depth}/{depth} with {structure.node_count} nodes")
    return tree


def train_plausibility_tree(
    data: Dataset, pw: PairWeightDistribution, depth: int, random_state: int = 0
) -> LeafPlausibility:
    """Tree fitted on the pair-weight marginal, read out as leaf class distributions."""
    return LeafPlausibility(train_tree(data, pw.marginal(), depth, random_state))
