"""
Discrete binary AdaBoost.

`discrete_step` is the single transition W_{t-1} -> W_t; the booster and the
dynamics layer's weight map both go through it.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from multiboost.boosters.common import (
    TraceRecorder,
    clamp_epsilon,
    exponential_update,
    min_normalized_margin,
    optimal_alpha,
    reached_half,
)
from multiboost.boosters.config import BoostConfig
from multiboost.core.dataset import BINARY_CLASSES, Dataset
from multiboost.core.ensemble import Ensemble, PredictionRule
from multiboost.core.hypotheses import WeakHypothesis, dichotomy_of, weighted_error
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import Dichotomy, WeightDistribution, edge
from multiboost.learners.factory import Learner, make_learner

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscreteStep:
    """Everything one round of discrete AdaBoost computes."""

    hypothesis: WeakHypothesis
    eta: Dichotomy
    epsilon: float
    edge: float
    alpha: float
    clamped: bool
    w_after: WeightDistribution
    z: float

    @property
    def at_half(self) -> bool:
        return reached_half(self.epsilon)


def discrete_step(
    data: Dataset, w: WeightDistribution, learner: Learner, eps_clamp: float = 1e-12
) -> DiscreteStep:
    """Train on w, then apply the exponential update with the optimal alpha."""
    h = learner(data, w)
    eta = dichotomy_of(h, data)
    epsilon = weighted_error(h, data, w)
    eps_used, clamped = clamp_epsilon(epsilon, eps_clamp)
    alpha = optimal_alpha(eps_used)
    w_after, z = exponential_update(w, eta, alpha)
    return DiscreteStep(h, eta, epsilon, edge(w, eta), alpha, clamped, w_after, z)


def adaboost_discrete(
    data: Dataset, cfg: BoostConfig, learner: Optional[Learner] = None
) -> tuple[Ensemble, BoostTrace]:
    """
    Original binary AdaBoost.

    Each round trains h_t on W_{t-1}, sets alpha_t = 1/2 log((1 - eps_t) / eps_t)
    with eps_t clamped, and reweights W_t(i) = W_{t-1}(i) exp(-alpha_t y_i h_t(x_i)) / Z_t.

    Args:
        data: Binary dataset
        cfg: Booster configuration
        learner: Optional learner overriding cfg.learner

    Returns:
        Tuple of (ensemble, trace)

    Raises:
        KindMismatchError: If the data is not binary.
    """
    data.require_binary("adaboost_discrete")
    learner = learner or make_learner(cfg.learner)

    w = WeightDistribution.uniform(data.m)
    recorder = TraceRecorder("discrete", cfg, w)
    ensemble = Ensemble.empty(BINARY_CLASSES, PredictionRule.SIGN)
    margins = np.zeros(data.m)

    for t in range(1, cfg.rounds + 1):
        step = discrete_step(data, w, learner, cfg.eps_clamp)
        if cfg.stop_on_eps_half and step.at_half:
            recorder.stop(f"weighted error {step.epsilon:.6g} >= 1/2")
            break

        ensemble = ensemble.append(step.alpha, step.hypothesis)
        margins += step.alpha * step.eta.eta
        recorder.add(
            w_before=w,
            w_after=step.w_after,
            epsilon=step.epsilon,
            alpha=step.alpha,
            z=step.z,
            edge=step.edge,
            hypothesis=step.hypothesis,
            min_margin_l1=min_normalized_margin(margins, float(np.sum(np.abs(ensemble.alphas)))),
            clamped=step.clamped,
        )
        w = step.w_after

        if cfg.stop_on_perfect and step.epsilon == 0.0:
            recorder.stop("zero weighted error")
            break

    return ensemble, recorder.build()
