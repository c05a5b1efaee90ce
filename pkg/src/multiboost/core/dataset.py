"""
Labeled sample sets.

Binary problems store labels as {-1, +1}; multiclass problems store them as
{0, ..., K-1}. Arrays are copied and frozen on construction.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from multiboost.core.errors import DimensionMismatchError, KindMismatchError

logger = logging.getLogger(__name__)

BINARY_CLASSES: tuple[int, ...] = (-1, 1)


def encode_labels(
    y: np.ndarray,
) -> tuple[np.ndarray, tuple[int, ...], Optional[tuple[int, ...]]]:
    """
    Encode integer labels as (-1, 1) or as 0..K-1 over the labels present.

    Returns:
        Tuple of (encoded labels, classes, original label per class or None
        when the labels were already in canonical form)

    Example:
        >>> y, classes, names = encode_labels(np.array([3, 1, 2, 3]))
        >>> y.tolist(), classes, names
        ([2, 0, 1, 2], (0, 1, 2), (1, 2, 3))
    """
    values, y_encoded = np.unique(np.asarray(y), return_inverse=True)
    present = tuple(int(v) for v in values)
    if set(present) <= set(BINARY_CLASSES):
        return np.asarray(y), BINARY_CLASSES, None
    classes = tuple(range(len(present)))
    if present == classes:
        return np.asarray(y), classes, None
    logger.info(f"Labels {present} encoded as {classes}")
    return y_encoded.astype(np.int64), classes, present


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Immutable labeled dataset.

    Attributes:
        X: Feature matrix of shape (m, d), float64
        y: Label vector of shape (m,), int64
        classes: Declared label set, (-1, 1) for binary data or (0, ..., K-1)
        feature_names: Optional column names carried from the source file
        label_names: Original label of each class, in `classes` order, when the
            source labels were not already 0..K-1

    Example:
        >>> data = Dataset.from_arrays([[0.0], [1.0], [2.0]], [1, -1, 1])
        >>> data.m, data.d, data.K, data.is_binary
        (3, 1, 2, True)
    """

    X: np.ndarray
    y: np.ndarray
    classes: tuple[int, ...]
    feature_names: Optional[tuple[str, ...]] = field(default=None)
    label_names: Optional[tuple[int, ...]] = field(default=None)

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y)

        if X.ndim != 2:
            raise DimensionMismatchError(f"Feature matrix must be 2-D, got shape {X.shape}")
        if X.shape[0] < 1:
            raise ValueError("Dataset must contain at least one sample")
        if y.shape != (X.shape[0],):
            raise DimensionMismatchError(
                f"Label vector shape {y.shape} does not match {X.shape[0]} samples"
            )
        if not np.all(np.isfinite(X)):
            raise ValueError("Feature matrix contains non-finite values")
        if y.size and not np.all(np.equal(np.mod(y, 1), 0)):
            raise ValueError("Labels must be integers")

        y = y.astype(np.int64)
        classes = tuple(int(c) for c in self.classes)
        if classes != BINARY_CLASSES and classes != tuple(range(len(classes))):
            raise ValueError(
                f"Classes must be (-1, 1) or (0, ..., K-1), got {classes}"
            )
        if len(classes) < 2:
            raise ValueError(f"At least two classes are required, got {classes}")

        unknown = set(np.unique(y).tolist()) - set(classes)
        if unknown:
            raise ValueError(f"Labels {sorted(unknown)} are not in the declared classes {classes}")

        if self.feature_names is not None and len(self.feature_names) != X.shape[1]:
            raise DimensionMismatchError(
                f"{len(self.feature_names)} feature names for {X.shape[1]} features"
            )
        if self.label_names is not None:
            names = tuple(int(v) for v in self.label_names)
            if len(names) != len(classes) or len(set(names)) != len(names):
                raise ValueError(f"Label names {names} do not name the {len(classes)} classes")
            object.__setattr__(self, "label_names", names)

        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "classes", classes)
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @classmethod
    def from_arrays(
        cls,
        X: Sequence[Sequence[float]] | np.ndarray,
        y: Sequence[int] | np.ndarray,
        classes: Optional[Sequence[int]] = None,
        feature_names: Optional[Sequence[str]] = None,
    ) -> "Dataset":
        """
        Build a dataset, inferring the class set when it is not given.

        Labels drawn from {-1, +1} give a binary dataset. Any other label set
        is mapped, in sorted order, onto 0..K-1 and the originals are kept in
        `label_names`.
        """
        y_arr = np.asarray(y)
        label_names = None
        if classes is None:
            y_arr, classes, label_names = encode_labels(y_arr)
        return cls(
            X=np.asarray(X, dtype=np.float64),
            y=y_arr,
            classes=tuple(classes),
            feature_names=tuple(feature_names) if feature_names is not None else None,
            label_names=label_names,
        )

    def original_labels(self, y: Optional[np.ndarray] = None) -> np.ndarray:
        """Labels as they appeared in the source, for `y` or the stored labels."""
        y = self.y if y is None else np.asarray(y, dtype=np.int64)
        if self.label_names is None:
            return y
        return np.asarray(self.label_names, dtype=np.int64)[y]

    @property
    def m(self) -> int:
        return int(self.X.shape[0])

    @property
    def d(self) -> int:
        return int(self.X.shape[1])

    @property
    def K(self) -> int:
        return len(self.classes)

    @property
    def is_binary(self) -> bool:
        return self.classes == BINARY_CLASSES

    @property
    def label_index(self) -> np.ndarray:
        """Column index of each sample's label in `classes` order."""
        if self.is_binary:
            return ((self.y + 1) // 2).astype(np.int64)
        return self.y

    def require_binary(self, operation: str) -> None:
        """Raise KindMismatchError unless labels are {-1, +1}."""
        if not self.is_binary:
            raise KindMismatchError(
                f"{operation} requires a binary dataset, got K={self.K} classes {self.classes}"
            )

    def __repr__(self) -> str:
        return f"Dataset(m={self.m}, d={self.d}, classes={self.classes})"
