"""
Normalized margins y_i H(x_i) / ||alpha||_p and their distribution.
"""

from dataclasses import dataclass

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.ensemble import Ensemble
from multiboost.core.errors import EmptyEnsembleError


@dataclass(frozen=True, eq=False)
class MarginReport:
    margins: np.ndarray
    min_margin: float
    p: float


def margins(ens: Ensemble, data: Dataset, p: float = 1) -> MarginReport:
    """
    Per-sample normalized margins and their minimum m_p.

    Raises:
        EmptyEnsembleError: If the ensemble has no terms.
        ValueError: If all coefficients are zero.
    """
    data.require_binary("margins")
    if len(ens) == 0:
        raise EmptyEnsembleError("Margins need at least one ensemble term")
    norm = float(np.linalg.norm(ens.alphas, ord=p))
    if norm == 0.0:
        raise ValueError("All ensemble coefficients are zero; margins are undefined")
    values = data.y * ens.decision_function(data.X) / norm
    return MarginReport(margins=values, min_margin=float(values.min()), p=p)


def margin_distribution(ens: Ensemble, data: Dataset, theta: float) -> float:
    """Fraction of samples whose l1-normalized margin is <= theta."""
    return float(np.mean(margins(ens, data, p=1).margins <= theta))


def margin_curve(ens: Ensemble, data: Dataset, p: float = 1) -> np.ndarray:
    """m_p(H_t) for every prefix t = 1..T (NaN while the prefix has zero norm)."""
    data.require_binary("margin_curve")
    y = data.y.astype(np.float64)
    scores = np.zeros(data.m)
    curve = np.full(len(ens), np.nan)
    for t, term in enumerate(ens.terms):
        scores += term.alpha * term.hypothesis.predict(data.X)
        norm = float(np.linalg.norm(ens.alphas[: t + 1], ord=p))
        if norm > 0:
            curve[t] = float(np.min(y * scores) / norm)
    return curve


def count_decreases(curve: np.ndarray, tol: float = 1e-12) -> int:
    """Number of steps where the curve drops by more than tol."""
    finite = curve[np.isfinite(curve)]
    return int(np.sum(np.diff(finite) < -tol))
