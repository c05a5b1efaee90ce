"""Margins, diversity, error bounds and self-averaging."""

from .bounds import bound_curve, training_error, training_error_bound
from .diversity import (
    diversity,
    diversity_curve,
    kappa,
    kappa_from_predictions,
    kappa_matrix,
    mean_pairwise_kappa,
    similarity,
    similarity_matrix,
)
from .margins import MarginReport, count_decreases, margin_curve, margin_distribution, margins
from .self_averaging import BlockReport, accuracy_vs_kept, self_averaging_split

__all__ = [
    "BlockReport",
    "MarginReport",
    "accuracy_vs_kept",
    "bound_curve",
    "count_decreases",
    "diversity",
    "diversity_curve",
    "kappa",
    "kappa_from_predictions",
    "kappa_matrix",
    "margin_curve",
    "margin_distribution",
    "margins",
    "mean_pairwise_kappa",
    "self_averaging_split",
    "similarity",
    "similarity_matrix",
    "training_error",
    "training_error_bound",
]
