"""
AdaBoost as mirror descent on the simplex.

Over a finite hypothesis class with dichotomy matrix A (A[i, j] = y_i h_j(x_i)),
the primal objective is f(W) = max_j (A^T W)_j, the best edge. Each round takes
the subgradient column of the maximizer and a Bregman step under the negative
entropy d(W) = sum_i W_i log W_i + log m, whose closed form is the exponential
reweighting. The dual iterate is the alpha-weighted average of the chosen vertices.
"""

import logging

import numpy as np

from multiboost.boosters.common import (
    TraceRecorder,
    clamp_epsilon,
    min_normalized_margin,
    optimal_alpha,
    reached_half,
)
from multiboost.boosters.config import BoostConfig
from multiboost.core.dataset import BINARY_CLASSES, Dataset
from multiboost.core.ensemble import Ensemble, PredictionRule
from multiboost.core.errors import ConfigError
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import WeightDistribution
from multiboost.learners.stumps import EDGE_TIE_TOL, first_within_tolerance, grid_dichotomies, stump_grid

logger = logging.getLogger(__name__)


def max_edge(w: WeightDistribution, A: np.ndarray) -> float:
    """f(W) = max_j sum_i W_i A[i, j]."""
    return float(np.max(A.T @ w.w))


def entropy_mirror_step(w: WeightDistribution, gradient: np.ndarray, step: float) -> WeightDistribution:
    """argmin_W step * <gradient, W> + D_d(W, w) over the simplex: w exp(-step * gradient), renormalized."""
    exponent = -step * gradient
    return WeightDistribution.from_unnormalized(w.w * np.exp(exponent - exponent.max()))[0]


def mirror_descent_boost(
    data: Dataset, cfg: BoostConfig
) -> tuple[Ensemble, BoostTrace, np.ndarray]:
    """
    Mirror-descent formulation over the stump grid.

    Returns:
        Tuple of (ensemble, trace, dual average lambda_T over the grid columns)

    Raises:
        ConfigError: If cfg.learner is not the stump learner (the class must be finite).
    """
    data.require_binary("mirror_descent_boost")
    if cfg.learner.kind != "stump":
        raise ConfigError("Mirror descent enumerates the stump grid; use the stump learner")

    grid = stump_grid(data)
    A = grid_dichotomies(data, grid)
    logger.info(f"Mirror descent over {len(grid)} grid stumps")

    w = WeightDistribution.uniform(data.m)
    recorder = TraceRecorder("mirror", cfg, w)
    ensemble = Ensemble.empty(BINARY_CLASSES, PredictionRule.SIGN)
    margins = np.zeros(data.m)
    vertex_mass = np.zeros(len(grid))

    for t in range(1, cfg.rounds + 1):
        edges = A.T @ w.w
        j = first_within_tolerance(-edges, EDGE_TIE_TOL)
        column = A[:, j]
        epsilon = float(np.sum(w.w[column < 0]))
        if cfg.stop_on_eps_half and reached_half(epsilon):
            recorder.stop(f"weighted error {epsilon:.6g} >= 1/2")
            break

        eps_used, clamped = clamp_epsilon(epsilon, cfg.eps_clamp)
        alpha = optimal_alpha(eps_used)
        w_after = entropy_mirror_step(w, column, alpha)
        vertex_mass[j] += alpha

        ensemble = ensemble.append(alpha, grid[j])
        margins += alpha * column
        recorder.add(
            w_before=w,
            w_after=w_after,
            epsilon=epsilon,
            alpha=alpha,
            z=float(np.sum(w.w * np.exp(-alpha * column))),
            edge=float(edges[j]),
            hypothesis=grid[j],
            min_margin_l1=min_normalized_margin(margins, float(np.sum(np.abs(ensemble.alphas)))),
            clamped=clamped,
        )
        w = w_after

        if cfg.stop_on_perfect and epsilon == 0.0:
            recorder.stop("zero weighted error")
            break

    total = vertex_mass.sum()
    dual = vertex_mass / total if total > 0 else np.full(len(grid), 1.0 / len(grid))
    trace = recorder.build(extras={"objective_start": max_edge(recorder.initial, A)})
    return ensemble, trace, dual
