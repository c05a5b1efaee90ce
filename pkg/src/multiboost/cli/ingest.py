"""
CSV datasets: numeric feature columns followed by a label column.

A non-numeric first row is taken as a header. Binary labels may be written as
{-1, 1} or {0, 1} (mapped to -1/+1). Other non-negative labels are mapped in
sorted order onto 0..K-1 and written back in their original form.
"""

import logging
import re
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from multiboost.core.dataset import BINARY_CLASSES, Dataset, encode_labels
from multiboost.core.errors import DatasetParseError

logger = logging.getLogger(__name__)

_PANDAS_LINE = re.compile(r"line (\d+)")


def _read_cells(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError:
        raise DatasetParseError("file is empty", line=1) from None
    except pd.errors.ParserError as e:
        match = _PANDAS_LINE.search(str(e))
        line = int(match.group(1)) if match else None
        raise DatasetParseError(f"ragged row ({e})", line=line) from None


def _is_numeric(cell: object) -> bool:
    return not pd.isna(pd.to_numeric(pd.Series([cell]), errors="coerce")[0])


def _labels_to_classes(
    raw: np.ndarray, lines: np.ndarray
) -> tuple[np.ndarray, tuple[int, ...], Optional[tuple[int, ...]]]:
    present = set(np.unique(raw).tolist())
    if present <= {0, 1}:
        return np.where(raw == 1, 1, -1), BINARY_CLASSES, None
    if min(present) < 0 and not present <= set(BINARY_CLASSES):
        bad = int(np.flatnonzero(~np.isin(raw, BINARY_CLASSES))[0])
        raise DatasetParseError(f"unknown label {raw[bad]}", line=int(lines[bad]))
    return encode_labels(raw)


def ingest_csv(path: Path | str) -> Dataset:
    """
    Parse a CSV file into a Dataset.

    Args:
        path: File with comma-separated rows; last column is the label

    Returns:
        Dataset with d = columns - 1 and classes inferred from the labels

    Raises:
        DatasetParseError: On empty files, ragged rows, non-numeric features or
            unknown labels (with the 1-based line number when known)
    """
    path = Path(path)
    if not path.exists():
        raise DatasetParseError(f"file not found: {path}")

    cells = _read_cells(path)
    lines = np.arange(1, len(cells) + 1)

    # missing trailing fields come back as NaN, blank lines as all-NaN or a single empty cell
    blank = cells.apply(lambda row: all(pd.isna(v) or v == "" for v in row), axis=1).to_numpy()
    cells, lines = cells[~blank].reset_index(drop=True), lines[~blank]
    if cells.empty:
        raise DatasetParseError("file is empty", line=1)
    if cells.shape[1] < 2:
        raise DatasetParseError("need at least one feature column and a label column", line=int(lines[0]))

    ragged = cells.isna().any(axis=1).to_numpy()
    if ragged.any():
        bad = int(np.flatnonzero(ragged)[0])
        raise DatasetParseError(
            f"ragged row: expected {cells.shape[1]} fields", line=int(lines[bad])
        )

    feature_names: Optional[tuple[str, ...]] = None
    if not all(_is_numeric(v) for v in cells.iloc[0]):
        feature_names = tuple(str(v).strip() for v in cells.iloc[0, :-1])
        logger.debug(f"Header detected in {path}: {feature_names}")
        cells, lines = cells.iloc[1:].reset_index(drop=True), lines[1:]
        if cells.empty:
            raise DatasetParseError("header row but no data rows", line=int(lines[0]) if len(lines) else 2)

    numeric = cells.apply(pd.to_numeric, errors="coerce")
    features = numeric.iloc[:, :-1]
    bad_rows = features.isna().any(axis=1).to_numpy()
    if bad_rows.any():
        bad = int(np.flatnonzero(bad_rows)[0])
        raise DatasetParseError("non-numeric feature value", line=int(lines[bad]))

    labels = numeric.iloc[:, -1].to_numpy(dtype=np.float64)
    bad_labels = ~np.isfinite(labels) | (np.mod(labels, 1) != 0)
    if bad_labels.any():
        bad = int(np.flatnonzero(bad_labels)[0])
        raise DatasetParseError(f"unknown label {cells.iloc[bad, -1]!r}", line=int(lines[bad]))

    y, classes, label_names = _labels_to_classes(labels.astype(np.int64), lines)
    X = features.to_numpy(dtype=np.float64)
    if not np.all(np.isfinite(X)):
        bad = int(np.flatnonzero(~np.isfinite(X).all(axis=1))[0])
        raise DatasetParseError("non-finite feature value", line=int(lines[bad]))

    data = Dataset(X=X, y=y, classes=classes, feature_names=feature_names, label_names=label_names)
    logger.info(f"Loaded {path}: m={data.m}, d={data.d}, K={data.K}")
    return data


def write_dataset_csv(data: Dataset, path: Path | str, header: bool = True) -> Path:
    """
    Write a Dataset so that ingest_csv reads it back unchanged.

    Floats are written with shortest round-trip precision.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    names = list(data.feature_names) if data.feature_names else [f"x{j + 1}" for j in range(data.d)]
    frame = pd.DataFrame(data.X, columns=names)
    frame["label"] = data.original_labels()
    frame.to_csv(path, index=False, header=header, float_format=None)
    logger.info(f"Wrote {data.m} rows to {path}")
    return path
