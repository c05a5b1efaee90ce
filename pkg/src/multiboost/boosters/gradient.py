"""
AdaBoost as functional gradient descent on a margin cost.

The state is the margin vector F_i = y_i H_{t-1}(x_i). With
C(H) = 1/m sum_i c(y_i H(x_i)), the steepest direction among weak hypotheses
maximizes -<grad C(H), h> = 1/m sum_i |c'(F_i)| eta_i, i.e. it minimizes the
weighted error under weights proportional to |c'(F_i)|.
"""

import logging
from typing import Literal, Optional

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import expit

from multiboost.boosters.common import (
    TraceRecorder,
    clamp_epsilon,
    min_normalized_margin,
    normalizer,
    optimal_alpha,
    reached_half,
)
from multiboost.boosters.config import BoostConfig
from multiboost.core.dataset import BINARY_CLASSES, Dataset
from multiboost.core.ensemble import Ensemble, PredictionRule
from multiboost.core.hypotheses import dichotomy_of, weighted_error
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import WeightDistribution, edge
from multiboost.learners.factory import Learner, make_learner

logger = logging.getLogger(__name__)

MarginCost = Literal["exponential", "logistic"]

# Upper end of the line search for the logistic cost.
MAX_STEP = 50.0


def cost_weights(margins: np.ndarray, cost: MarginCost = "exponential") -> WeightDistribution:
    """Sample weights |c'(F_i)| / sum_j |c'(F_j)|."""
    if cost == "exponential":
        # |c'(g)| = exp(-g); shifting by the minimum margin leaves the ratio unchanged
        magnitudes = np.exp(-(margins - margins.min()))
    elif cost == "logistic":
        magnitudes = expit(-margins)
    else:
        raise ValueError(f"Unknown margin cost {cost!r}")
    return WeightDistribution.from_unnormalized(magnitudes)[0]


def _logistic_step(margins: np.ndarray, eta: np.ndarray) -> float:
    """Step minimizing 1/m sum_i log(1 + exp(-(F_i + a eta_i))) over a in [0, MAX_STEP]."""
    result = minimize_scalar(
        lambda a: float(np.mean(np.logaddexp(0.0, -(margins + a * eta)))),
        bounds=(0.0, MAX_STEP),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(result.x)


def adaboost_gradient_view(
    data: Dataset,
    cfg: BoostConfig,
    learner: Optional[Learner] = None,
    cost: MarginCost = "exponential",
) -> tuple[Ensemble, BoostTrace]:
    """
    Gradient-descent formulation.

    With the exponential cost the hypothesis and alpha sequences coincide with
    adaboost_discrete. The logistic cost replaces the closed-form alpha by a line
    search and is not expected to match.

    Args:
        data: Binary dataset
        cfg: Booster configuration
        learner: Optional learner overriding cfg.learner
        cost: "exponential" (AdaBoost) or "logistic"
    """
    data.require_binary("adaboost_gradient_view")
    learner = learner or make_learner(cfg.learner)

    margins = np.zeros(data.m)
    w = cost_weights(margins, cost)
    recorder = TraceRecorder("gradient" if cost == "exponential" else f"gradient-{cost}", cfg, w)
    ensemble = Ensemble.empty(BINARY_CLASSES, PredictionRule.SIGN)

    for t in range(1, cfg.rounds + 1):
        h = learner(data, w)
        eta = dichotomy_of(h, data)
        descent = float(np.dot(w.w, eta.eta))
        epsilon = weighted_error(h, data, w)
        logger.debug(f"t={t} normalized descent -<grad C, h> = {descent:.6g}")

        if cfg.stop_on_eps_half and reached_half(epsilon):
            recorder.stop(f"weighted error {epsilon:.6g} >= 1/2")
            break

        eps_used, clamped = clamp_epsilon(epsilon, cfg.eps_clamp)
        if cost == "exponential":
            alpha = optimal_alpha(eps_used)
        else:
            alpha = _logistic_step(margins, eta.eta)

        margins = margins + alpha * eta.eta
        w_after = cost_weights(margins, cost)
        ensemble = ensemble.append(alpha, h)
        recorder.add(
            w_before=w,
            w_after=w_after,
            epsilon=epsilon,
            alpha=alpha,
            z=normalizer(w, eta, alpha),
            edge=edge(w, eta),
            hypothesis=h,
            # H_t / sum |alpha| is used for reporting only
            min_margin_l1=min_normalized_margin(margins, float(np.sum(np.abs(ensemble.alphas)))),
            clamped=clamped,
        )
        w = w_after

        if cfg.stop_on_perfect and epsilon == 0.0:
            recorder.stop("zero weighted error")
            break

    return ensemble, recorder.build()
