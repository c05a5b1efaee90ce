"""
Multiclass boosters: AdaBoost.M1 and SAMME (weighted error), real AdaBoost (pseudo-loss).
"""

import logging
import math
from typing import Optional

import numpy as np

from multiboost.boosters.common import HALF_TOL, TraceRecorder, clamp_epsilon, reached_half
from multiboost.boosters.config import BoostConfig
from multiboost.core.dataset import Dataset
from multiboost.core.ensemble import Ensemble, PredictionRule
from multiboost.core.errors import DimensionMismatchError
from multiboost.core.hypotheses import WeakHypothesis, mistakes
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import PairWeightDistribution, WeightDistribution
from multiboost.learners.factory import (
    Learner,
    PlausibilityLearner,
    make_learner,
    make_plausibility_learner,
)

logger = logging.getLogger(__name__)


def adaboost_m1(
    data: Dataset, cfg: BoostConfig, learner: Optional[Learner] = None
) -> tuple[Ensemble, BoostTrace]:
    """
    AdaBoost.M1.

    With beta_t = eps_t / (1 - eps_t), correctly classified samples are multiplied by
    beta_t and all weights are renormalized by their actual sum. The final rule is
    argmax_y sum_t log(1 / beta_t) 1[h_t(x) = y]. On binary data this reproduces
    adaboost_discrete round for round.
    """
    learner = learner or make_learner(cfg.learner)

    w = WeightDistribution.uniform(data.m)
    recorder = TraceRecorder("m1", cfg, w)
    ensemble = Ensemble.empty(data.classes, PredictionRule.VOTE)
    margins = np.zeros(data.m)

    for t in range(1, cfg.rounds + 1):
        h = learner(data, w)
        wrong = mistakes(h, data)
        epsilon = float(np.sum(w.w[wrong]))
        if cfg.stop_on_eps_half and reached_half(epsilon):
            recorder.stop(f"weighted error {epsilon:.6g} >= 1/2")
            break

        eps_used, clamped = clamp_epsilon(epsilon, cfg.eps_clamp)
        beta = eps_used / (1.0 - eps_used)
        w_after, z = WeightDistribution.from_unnormalized(np.where(wrong, w.w, w.w * beta))
        vote = math.log(1.0 / beta)

        ensemble = ensemble.append(vote, h)
        min_margin = float("nan")
        if data.is_binary:
            margins += vote * np.where(wrong, -1.0, 1.0)
            min_margin = float(np.min(margins) / np.sum(np.abs(ensemble.alphas)))
        recorder.add(
            w_before=w,
            w_after=w_after,
            epsilon=epsilon,
            alpha=vote,
            z=z,
            edge=1.0 - 2.0 * epsilon,
            hypothesis=h,
            min_margin_l1=min_margin,
            clamped=clamped,
        )
        w = w_after

        if cfg.stop_on_perfect and epsilon == 0.0:
            recorder.stop("zero weighted error")
            break

    return ensemble, recorder.build()


def adaboost_samme(
    data: Dataset, cfg: BoostConfig, learner: Optional[Learner] = None
) -> tuple[Ensemble, BoostTrace]:
    """
    Multiclass AdaBoost with the SAMME coefficient log((1 - eps) / eps) + log(K - 1).

    A hypothesis only has to beat random guessing (eps < 1 - 1/K), so weak
    multiclass learners keep the run going where M1 would stop. Misclassified
    samples are multiplied by exp(alpha). On binary data the weights match
    adaboost_discrete and the coefficients are twice the discrete ones.
    """
    learner = learner or make_learner(cfg.learner)
    chance = 1.0 - 1.0 / data.K

    w = WeightDistribution.uniform(data.m)
    recorder = TraceRecorder("samme", cfg, w)
    ensemble = Ensemble.empty(data.classes, PredictionRule.VOTE)

    for t in range(1, cfg.rounds + 1):
        h = learner(data, w)
        wrong = mistakes(h, data)
        epsilon = float(np.sum(w.w[wrong]))
        if cfg.stop_on_eps_half and epsilon >= chance - HALF_TOL:
            recorder.stop(f"weighted error {epsilon:.6g} >= {chance:.6g} (random guessing)")
            break

        eps_used, clamped = clamp_epsilon(epsilon, cfg.eps_clamp)
        alpha = math.log((1.0 - eps_used) / eps_used) + math.log(data.K - 1)
        w_after, z = WeightDistribution.from_unnormalized(np.where(wrong, w.w * math.exp(alpha), w.w))

        ensemble = ensemble.append(alpha, h)
        recorder.add(
            w_before=w,
            w_after=w_after,
            epsilon=epsilon,
            alpha=alpha,
            z=z,
            edge=1.0 - 2.0 * epsilon,
            hypothesis=h,
            clamped=clamped,
        )
        w = w_after

        if cfg.stop_on_perfect and epsilon == 0.0:
            recorder.stop("zero weighted error")
            break

    return ensemble, recorder.build()


def _plausibility_matrix(h: WeakHypothesis, data: Dataset) -> np.ndarray:
    values = np.asarray(h.plausibility(data.X), dtype=np.float64)
    if values.shape != (data.m, data.K):
        raise DimensionMismatchError(f"Plausibility matrix has shape {values.shape}, expected {(data.m, data.K)}")
    if np.any(values < 0.0) or np.any(values > 1.0):
        raise ValueError("Plausibility values must lie in [0, 1]")
    return values


def pseudo_loss(h: WeakHypothesis, data: Dataset, pw: PairWeightDistribution) -> float:
    """
    Pseudo-loss 1/2 sum_{(i, y): y != y_i} W(i, y) (1 - h(x_i, y_i) + h(x_i, y)).

    Raises:
        ValueError: If any plausibility lies outside [0, 1].
        KindMismatchError: If h is not a plausibility hypothesis.
    """
    if pw.m != data.m:
        raise DimensionMismatchError(f"Pair weights cover {pw.m} samples, dataset has {data.m}")
    values = _plausibility_matrix(h, data)
    own = values[np.arange(data.m), data.label_index]
    return float(0.5 * np.sum(pw.w * (1.0 - own[:, None] + values)))


def adaboost_real(
    data: Dataset, cfg: BoostConfig, learner: Optional[PlausibilityLearner] = None
) -> tuple[Ensemble, BoostTrace]:
    """
    Real AdaBoost with plausibility hypotheses and pair weights over (i, y != y_i).

    alpha_t = (1 - eps_t) / eps_t multiplies W(i, y) by
    alpha_t ** (1/2 (1 - h(x_i, y_i) + h(x_i, y))); votes use log((1 - eps_t) / eps_t)
    so that better hypotheses get larger, positive votes. Trace weights are the
    pair-weight marginals; the full pair matrix is kept in `pair_w_after`.
    """
    learner = learner or make_plausibility_learner(cfg.learner)

    pw = PairWeightDistribution.uniform(data)
    recorder = TraceRecorder("real", cfg, pw.marginal())
    ensemble = Ensemble.empty(data.classes, PredictionRule.PLAUSIBILITY)
    rows = np.arange(data.m)

    for t in range(1, cfg.rounds + 1):
        h = learner(data, pw)
        epsilon = pseudo_loss(h, data, pw)
        if cfg.stop_on_eps_half and reached_half(epsilon):
            recorder.stop(f"pseudo-loss {epsilon:.6g} >= 1/2")
            break

        eps_used, clamped = clamp_epsilon(epsilon, cfg.eps_clamp)
        log_alpha = math.log((1.0 - eps_used) / eps_used)
        values = _plausibility_matrix(h, data)
        exponent = 0.5 * (1.0 - values[rows, data.label_index][:, None] + values)
        pw_after, z = PairWeightDistribution.from_unnormalized(
            pw.w * np.exp(log_alpha * exponent), data.label_index
        )

        ensemble = ensemble.append(log_alpha, h)
        recorder.add(
            w_before=pw.marginal(),
            w_after=pw_after.marginal(),
            epsilon=epsilon,
            alpha=log_alpha,
            z=z,
            edge=1.0 - 2.0 * epsilon,
            hypothesis=h,
            clamped=clamped,
            pair_w_after=pw_after.w,
        )
        pw = pw_after

        if cfg.stop_on_perfect and epsilon == 0.0:
            recorder.stop("zero pseudo-loss")
            break

    return ensemble, recorder.build()
