"""
Scalar rules and bookkeeping shared by the boosters.
"""

import logging
import math
from typing import Any, Optional

import numpy as np

from multiboost.boosters.config import BoostConfig
from multiboost.core.hypotheses import WeakHypothesis
from multiboost.core.trace import BoostTrace, RoundRecord
from multiboost.core.weights import Dichotomy, WeightDistribution

logger = logging.getLogger(__name__)

# Errors within this distance of 1/2 count as "no better than chance".
HALF_TOL = 1e-12


def optimal_alpha(epsilon: float) -> float:
    """
    Coefficient alpha = 1/2 log((1 - epsilon) / epsilon).

    Antisymmetric about epsilon = 1/2; +inf at 0 and -inf at 1, so callers clamp first.

    Raises:
        ValueError: If epsilon is outside [0, 1].

    Example:
        >>> round(optimal_alpha(1 / 3), 7)
        0.3465736
    """
    if not 0.0 <= epsilon <= 1.0 or math.isnan(epsilon):
        raise ValueError(f"Weighted error must lie in [0, 1], got {epsilon}")
    if epsilon == 0.0:
        return math.inf
    if epsilon == 1.0:
        return -math.inf
    return 0.5 * math.log((1.0 - epsilon) / epsilon)


def clamp_epsilon(epsilon: float, eps_clamp: float) -> tuple[float, bool]:
    """Clamp to [eps_clamp, 1 - eps_clamp]; second item tells whether clamping happened."""
    clamped = min(max(epsilon, eps_clamp), 1.0 - eps_clamp)
    if clamped != epsilon:
        logger.warning(f"Weighted error {epsilon!r} clamped to {clamped!r}")
    return clamped, clamped != epsilon


def reached_half(epsilon: float) -> bool:
    return epsilon >= 0.5 - HALF_TOL


def normalizer(w: WeightDistribution, eta: Dichotomy, alpha: float) -> float:
    """Z(alpha) = sum_i w_i exp(-alpha eta_i)."""
    return float(np.sum(w.w * np.exp(-alpha * eta.eta)))


def exponential_update(
    w: WeightDistribution, eta: Dichotomy, alpha: float
) -> tuple[WeightDistribution, float]:
    """W_t(i) = W_{t-1}(i) exp(-alpha eta_i) / Z_t; returns (weights, Z_t)."""
    return WeightDistribution.from_unnormalized(w.w * np.exp(-alpha * eta.eta))


def min_normalized_margin(margins: np.ndarray, alphas_l1: float) -> float:
    """min_i y_i H(x_i) / ||alpha||_1, NaN while the ensemble is empty or all-zero."""
    if alphas_l1 <= 0:
        return float("nan")
    return float(np.min(margins) / alphas_l1)


class TraceRecorder:
    """Accumulates round records and builds the immutable BoostTrace."""

    def __init__(self, algo: str, cfg: BoostConfig, initial: WeightDistribution):
        self.algo = algo
        self.cfg = cfg
        self.initial = initial
        self.records: list[RoundRecord] = []
        self.stop_reason: Optional[str] = None

    @property
    def next_t(self) -> int:
        return len(self.records) + 1

    def add(
        self,
        w_before: WeightDistribution,
        w_after: WeightDistribution,
        epsilon: float,
        alpha: float,
        z: float,
        edge: float,
        hypothesis: WeakHypothesis,
        min_margin_l1: float = float("nan"),
        clamped: bool = False,
        pair_w_after: Optional[np.ndarray] = None,
    ) -> RoundRecord:
        record = RoundRecord(
            t=self.next_t,
            w_before=w_before,
            w_after=w_after,
            epsilon=float(epsilon),
            alpha=float(alpha),
            z=float(z),
            edge=float(edge),
            hypothesis=hypothesis,
            min_margin_l1=float(min_margin_l1),
            clamped=clamped,
            pair_w_after=pair_w_after,
        )
        self.records.append(record)
        logger.debug(
            f"{self.algo} t={record.t} eps={record.epsilon:.6g} alpha={record.alpha:.6g} "
            f"h={record.hypothesis_id}"
        )
        return record

    def stop(self, reason: str) -> None:
        self.stop_reason = reason
        logger.info(f"{self.algo}: stopping at t={self.next_t}: {reason}")

    def build(self, extras: Optional[dict[str, Any]] = None) -> BoostTrace:
        logger.info(
            f"{self.algo}: finished {len(self.records)}/{self.cfg.rounds} rounds"
            + (f" ({self.stop_reason})" if self.stop_reason else "")
        )
        return BoostTrace(
            algo=self.algo,
            seed=self.cfg.seed,
            config=self.cfg.model_dump(mode="json"),
            records=tuple(self.records),
            initial=self.initial,
            stop_reason=self.stop_reason,
            extras=extras or {},
        )
