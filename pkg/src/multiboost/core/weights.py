"""
Sample weights on the simplex, dichotomies and the edge.
"""

from dataclasses import dataclass

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.errors import DimensionMismatchError, SimplexError

SIMPLEX_TOL = 1e-12


def _read_only(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def _check_simplex(w: np.ndarray, what: str) -> None:
    if w.size == 0:
        raise SimplexError(f"{what} must be non-empty")
    if not np.all(np.isfinite(w)):
        raise SimplexError(f"{what} contains non-finite entries")
    if np.any(w < 0):
        raise SimplexError(f"{what} has negative entries (min={w.min()})")
    total = float(np.sum(w))
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise SimplexError(f"{what} sums to {total!r}, expected 1 within {SIMPLEX_TOL}")


@dataclass(frozen=True, eq=False)
class WeightDistribution:
    """
    Point on the m-simplex: the booster's state.

    Example:
        >>> WeightDistribution.uniform(4).w
        array([0.25, 0.25, 0.25, 0.25])
    """

    w: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=np.float64)
        if w.ndim != 1:
            raise DimensionMismatchError(f"Weights must be a vector, got shape {w.shape}")
        _check_simplex(w, "Weight vector")
        object.__setattr__(self, "w", _read_only(w))

    @classmethod
    def uniform(cls, m: int) -> "WeightDistribution":
        if m < 1:
            raise ValueError(f"Sample count must be >= 1, got {m}")
        return cls(np.full(m, 1.0 / m))

    @classmethod
    def from_unnormalized(cls, v: np.ndarray) -> tuple["WeightDistribution", float]:
        """Normalize nonnegative weights by their sum; returns (distribution, sum)."""
        v = np.asarray(v, dtype=np.float64)
        z = float(np.sum(v))
        if not np.isfinite(z) or z <= 0:
            raise SimplexError(f"Cannot normalize weights with sum {z!r}")
        return cls(v / z), z

    @property
    def m(self) -> int:
        return int(self.w.shape[0])

    @property
    def is_interior(self) -> bool:
        return bool(np.all(self.w > 0))

    def __len__(self) -> int:
        return self.m


@dataclass(frozen=True, eq=False)
class Dichotomy:
    """
    Correctness pattern of a binary hypothesis: eta_i = y_i * h(x_i).
    """

    eta: np.ndarray

    def __post_init__(self) -> None:
        eta = np.asarray(self.eta)
        if eta.ndim != 1:
            raise DimensionMismatchError(f"Dichotomy must be a vector, got shape {eta.shape}")
        if not np.all((eta == 1) | (eta == -1)):
            raise ValueError("Dichotomy entries must be exactly +1 or -1")
        object.__setattr__(self, "eta", _read_only(eta))

    @classmethod
    def from_predictions(cls, predictions: np.ndarray, data: Dataset) -> "Dichotomy":
        return cls(np.asarray(data.y, dtype=np.float64) * np.asarray(predictions, dtype=np.float64))

    def __neg__(self) -> "Dichotomy":
        return Dichotomy(-self.eta)

    def __len__(self) -> int:
        return int(self.eta.shape[0])


def edge(w: WeightDistribution, eta: Dichotomy) -> float:
    """
    Edge of a hypothesis under weights w: w^T eta = 1 - 2 * weighted error.

    Raises:
        DimensionMismatchError: If the vectors have different lengths.
    """
    if w.m != len(eta):
        raise DimensionMismatchError(f"Weights have length {w.m}, dichotomy has {len(eta)}")
    return float(np.dot(w.w, eta.eta))


@dataclass(frozen=True, eq=False)
class PairWeightDistribution:
    """
    Weights over mislabel pairs (i, y) with y != y_i.

    Stored as an (m, K) matrix whose true-label entries are held at zero; columns
    follow the dataset's `classes` order.
    """

    w: np.ndarray
    label_index: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=np.float64)
        idx = np.asarray(self.label_index, dtype=np.int64)
        if w.ndim != 2 or idx.shape != (w.shape[0],):
            raise DimensionMismatchError(
                f"Pair weights of shape {w.shape} do not match {idx.shape[0]} labels"
            )
        if np.any(w[np.arange(w.shape[0]), idx] != 0):
            raise SimplexError("Pair weights must be zero on each sample's own label")
        _check_simplex(w.ravel(), "Pair weights")
        object.__setattr__(self, "w", _read_only(w))
        object.__setattr__(self, "label_index", _read_only(idx).astype(np.int64))

    @classmethod
    def uniform(cls, data: Dataset) -> "PairWeightDistribution":
        """Initial weights 1/(m(K-1)) on every mislabel pair."""
        w = np.full((data.m, data.K), 1.0 / (data.m * (data.K - 1)))
        w[np.arange(data.m), data.label_index] = 0.0
        return cls(w, data.label_index)

    @classmethod
    def from_unnormalized(
        cls, v: np.ndarray, label_index: np.ndarray
    ) -> tuple["PairWeightDistribution", float]:
        v = np.array(v, dtype=np.float64, copy=True)
        v[np.arange(v.shape[0]), label_index] = 0.0
        z = float(np.sum(v))
        if not np.isfinite(z) or z <= 0:
            raise SimplexError(f"Cannot normalize pair weights with sum {z!r}")
        return cls(v / z, label_index), z

    def marginal(self) -> WeightDistribution:
        """Sample weights D(i) = sum over y of W(i, y)."""
        d = self.w.sum(axis=1)
        return WeightDistribution(d / d.sum())

    @property
    def m(self) -> int:
        return int(self.w.shape[0])
