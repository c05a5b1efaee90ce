"""
AdaBoost as incremental learning in a product of experts.

Expert t reports P(y | x, h_t) = exp(alpha_t y h_t(x)) / (exp(-alpha_t) + exp(alpha_t));
each sample is reweighted by the probability the new expert gives to the wrong
label. The incorrect-label probability P_t of a correct prediction equals eps_t.
"""

import logging
from typing import Optional

import numpy as np
from scipy.special import expit

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
from multiboost.core.errors import KindMismatchError
from multiboost.core.hypotheses import dichotomy_of, weighted_error
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import Dichotomy, WeightDistribution, edge
from multiboost.learners.factory import Learner, make_learner

logger = logging.getLogger(__name__)


def expert_error_probability(alpha: float) -> float:
    """P_t = exp(-alpha) / (exp(-alpha) + exp(alpha))."""
    return float(expit(-2.0 * alpha))


def poe_update(
    w: WeightDistribution, eta: Dichotomy, alpha: float
) -> tuple[WeightDistribution, float, float]:
    """
    Multiply each weight by 1 - P(y_i | x_i, h_t) and renormalize.

    Returns:
        Tuple of (new weights, P_t, normalizer)
    """
    p_wrong = expert_error_probability(alpha)
    multiplier = np.where(eta.eta > 0, p_wrong, 1.0 - p_wrong)
    w_after, z = WeightDistribution.from_unnormalized(w.w * multiplier)
    return w_after, p_wrong, z


def poe_boost(
    data: Dataset, cfg: BoostConfig, learner: Optional[Learner] = None
) -> tuple[Ensemble, BoostTrace]:
    """
    Product-of-experts formulation; weights and final classifier match adaboost_discrete.
    """
    data.require_binary("poe_boost")
    learner = learner or make_learner(cfg.learner)

    w = WeightDistribution.uniform(data.m)
    recorder = TraceRecorder("poe", cfg, w)
    ensemble = Ensemble.empty(BINARY_CLASSES, PredictionRule.SIGN)
    margins = np.zeros(data.m)

    for t in range(1, cfg.rounds + 1):
        h = learner(data, w)
        eta = dichotomy_of(h, data)
        epsilon = weighted_error(h, data, w)
        if cfg.stop_on_eps_half and reached_half(epsilon):
            recorder.stop(f"weighted error {epsilon:.6g} >= 1/2")
            break

        eps_used, clamped = clamp_epsilon(epsilon, cfg.eps_clamp)
        alpha = optimal_alpha(eps_used)
        w_after, p_wrong, z = poe_update(w, eta, alpha)
        logger.debug(f"t={t} expert error probability P_t={p_wrong:.6g} (eps_t={epsilon:.6g})")

        ensemble = ensemble.append(alpha, h)
        margins += alpha * eta.eta
        recorder.add(
            w_before=w,
            w_after=w_after,
            epsilon=epsilon,
            alpha=alpha,
            z=z,
            edge=edge(w, eta),
            hypothesis=h,
            min_margin_l1=min_normalized_margin(margins, float(np.sum(np.abs(ensemble.alphas)))),
            clamped=clamped,
        )
        w = w_after

        if cfg.stop_on_perfect and epsilon == 0.0:
            recorder.stop("zero weighted error")
            break

    return ensemble, recorder.build()


def poe_posterior(ens: Ensemble, X: np.ndarray) -> np.ndarray:
    """
    Probability of label +1 under the product of the ensemble's experts.

    The product of exp(alpha_t y h_t(x)) normalized over y in {-1, +1} gives
    P(+1 | x) = sigmoid(2 H(x)).
    """
    if not ens.is_binary or ens.rule is not PredictionRule.SIGN:
        raise KindMismatchError("PoE posterior is defined for binary sign ensembles")
    return expit(2.0 * ens.decision_function(X))
