"""
Weak hypothesis interface and the hypothesis-level operations shared by every booster.
"""

import hashlib
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.errors import DimensionMismatchError, KindMismatchError
from multiboost.core.weights import Dichotomy, WeightDistribution


class HypothesisKind(str, Enum):
    """Output type of a weak hypothesis."""

    BINARY = "binary"  # x -> {-1, +1}
    MULTICLASS = "multiclass"  # x -> label in the declared class set
    PLAUSIBILITY = "plausibility"  # (x, y) -> [0, 1]
    CONFIDENCE = "confidence"  # x -> real, sign is the label


def format_float(value: float) -> str:
    """Shortest round-trip text for a float, with signed infinities."""
    if np.isinf(value):
        return "-inf" if value < 0 else "inf"
    return repr(float(value))


class WeakHypothesis(ABC):
    """Base class for all weak hypotheses; subclasses are immutable."""

    kind: HypothesisKind

    @abstractmethod
    def predict(self, X: np.ndarray) -> np.ndarray:
        """Predicted label (or real score for confidence-rated hypotheses) per row of X."""

    @abstractmethod
    def to_dict(self) -> dict[str, Any]:
        """JSON-ready description; must round-trip through the trace codec."""

    def plausibility(self, X: np.ndarray) -> np.ndarray:
        """Matrix (n, K) of plausibilities h(x, y), columns in class order."""
        raise KindMismatchError(f"{type(self).__name__} is not a plausibility hypothesis")

    @property
    def hypothesis_id(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha1(payload.encode("utf-8")).hexdigest()[:12]
        return f"{self.kind.value}:{digest}"


@dataclass(frozen=True)
class Negated(WeakHypothesis):
    """Sign-flipped binary hypothesis, -h."""

    base: WeakHypothesis

    def __post_init__(self) -> None:
        if self.base.kind is not HypothesisKind.BINARY:
            raise KindMismatchError("Only binary hypotheses can be negated")

    kind = HypothesisKind.BINARY

    def predict(self, X: np.ndarray) -> np.ndarray:
        return -self.base.predict(X)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "negated", "base": self.base.to_dict()}

    @property
    def hypothesis_id(self) -> str:
        return f"-{self.base.hypothesis_id}"


@dataclass(frozen=True)
class OneHotPlausibility(WeakHypothesis):
    """Plausibility h(x, y) = 1 if base(x) == y else 0."""

    base: WeakHypothesis
    classes: tuple[int, ...]

    kind = HypothesisKind.PLAUSIBILITY

    def plausibility(self, X: np.ndarray) -> np.ndarray:
        pred = self.base.predict(X)
        return (pred[:, None] == np.asarray(self.classes)[None, :]).astype(np.float64)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.base.predict(X)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "onehot", "classes": list(self.classes), "base": self.base.to_dict()}

    @property
    def hypothesis_id(self) -> str:
        return f"onehot({self.base.hypothesis_id})"


@dataclass(frozen=True)
class ConstantPlausibility(WeakHypothesis):
    """Uninformative plausibility h(x, y) = value for every pair."""

    value: float
    classes: tuple[int, ...]

    kind = HypothesisKind.PLAUSIBILITY

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"Plausibility must lie in [0, 1], got {self.value}")

    def plausibility(self, X: np.ndarray) -> np.ndarray:
        return np.full((np.asarray(X).shape[0], len(self.classes)), float(self.value))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.full(np.asarray(X).shape[0], self.classes[0], dtype=np.int64)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "constant_plausibility", "value": self.value, "classes": list(self.classes)}

    @property
    def hypothesis_id(self) -> str:
        return f"const_plaus({format_float(self.value)})"


def dichotomy_of(h: WeakHypothesis, data: Dataset) -> Dichotomy:
    """
    Correctness pattern eta_i = y_i * h(x_i) of a binary hypothesis.

    Raises:
        KindMismatchError: If h is not binary or data is not binary.

    """
    if h.kind is not HypothesisKind.BINARY:
        raise KindMismatchError(f"dichotomy_of requires a binary hypothesis, got {h.kind.value}")
    data.require_binary("dichotomy_of")
    return Dichotomy.from_predictions(h.predict(data.X), data)


def mistakes(h: WeakHypothesis, data: Dataset) -> np.ndarray:
    """Boolean mask of samples a discrete hypothesis gets wrong."""
    if h.kind not in (HypothesisKind.BINARY, HypothesisKind.MULTICLASS):
        raise KindMismatchError(f"Weighted error needs a discrete hypothesis, got {h.kind.value}")
    return np.asarray(h.predict(data.X)) != data.y


def weighted_error(h: WeakHypothesis, data: Dataset, w: WeightDistribution) -> float:
    """
    Weighted misclassification sum_i w_i * 1[h(x_i) != y_i], in [0, 1].
    """
    if w.m != data.m:
        raise DimensionMismatchError(f"Weights have length {w.m}, dataset has {data.m} samples")
    return float(np.sum(w.w[mistakes(h, data)]))
