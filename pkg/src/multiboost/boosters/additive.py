"""
Real-valued binary AdaBoost as a stagewise additive model.

Each round fits a confidence-rated stump h_t whose outputs already carry the step
size, then reweights W_t(i) = W_{t-1}(i) exp(-y_i h_t(x_i)) / Z_t.
"""

import logging
from typing import Optional

import numpy as np

from multiboost.boosters.common import TraceRecorder
from multiboost.boosters.config import BoostConfig
from multiboost.core.dataset import BINARY_CLASSES, Dataset
from multiboost.core.ensemble import Ensemble, PredictionRule
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import WeightDistribution
from multiboost.learners.confidence import train_confidence_stump

logger = logging.getLogger(__name__)

# A round whose normalizer is this close to 1 makes no progress.
NO_PROGRESS_TOL = 1e-12


def adaboost_real_additive(data: Dataset, cfg: BoostConfig) -> tuple[Ensemble, BoostTrace]:
    """
    Confidence-rated boosting with unit coefficients.

    Trace epsilon is the weighted error of sign(h_t) (sign(0) -> +1) and edge is
    the weighted correlation sum_i W_i y_i h_t(x_i).
    """
    data.require_binary("adaboost_real_additive")

    w = WeightDistribution.uniform(data.m)
    recorder = TraceRecorder("real-additive", cfg, w)
    ensemble = Ensemble.empty(BINARY_CLASSES, PredictionRule.SIGN)
    scores = np.zeros(data.m)
    y = data.y.astype(np.float64)

    for t in range(1, cfg.rounds + 1):
        h = train_confidence_stump(data, w, cfg.smoothing)
        output = h.predict(data.X)
        signed = np.where(output >= 0, 1, -1)
        epsilon = float(np.sum(w.w[signed != data.y]))

        w_after, z = WeightDistribution.from_unnormalized(w.w * np.exp(-y * output))
        if z >= 1.0 - NO_PROGRESS_TOL:
            recorder.stop(f"normalizer {z:.6g} shows no progress")
            break

        ensemble = ensemble.append(1.0, h)
        scores += output
        recorder.add(
            w_before=w,
            w_after=w_after,
            epsilon=epsilon,
            alpha=1.0,
            z=z,
            edge=float(np.dot(w.w, y * output)),
            hypothesis=h,
            min_margin_l1=float(np.min(y * scores) / len(ensemble)),
        )
        w = w_after

    return ensemble, recorder.build()
