"""
Per-round records of a boosting run.

A BoostTrace is what the equivalence, dynamics and analysis layers consume, so
it stores the full weight vector before and after every update.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from multiboost.core.hypotheses import WeakHypothesis
from multiboost.core.weights import WeightDistribution


@dataclass(frozen=True, eq=False)
class RoundRecord:
    """
    State of one boosting round t (1-based).

    `alpha` is always the coefficient of h_t in the returned ensemble.
    `min_margin_l1` is NaN when the margin is undefined (multiclass runs).
    """

    t: int
    w_before: WeightDistribution
    w_after: WeightDistribution
    epsilon: float
    alpha: float
    z: float
    edge: float
    hypothesis: WeakHypothesis
    min_margin_l1: float = float("nan")
    clamped: bool = False
    pair_w_after: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"Round {self.t}: epsilon {self.epsilon} outside [0, 1]")
        if self.w_before.m != self.w_after.m:
            raise ValueError(f"Round {self.t}: weight vectors differ in length")

    @property
    def hypothesis_id(self) -> str:
        return self.hypothesis.hypothesis_id


@dataclass(frozen=True, eq=False)
class BoostTrace:
    """
    Immutable record of a complete run plus its metadata.

    Attributes:
        algo: Booster name (e.g. "discrete", "mirror")
        seed: Seed the run was started with (None when irrelevant)
        config: Plain-dict snapshot of the run configuration
        records: Round records, contiguous from t=1
        initial: Starting weights W_0
        stop_reason: Why the run ended before `rounds` (None if it ran to completion)
    """

    algo: str
    seed: Optional[int]
    config: dict[str, Any]
    records: tuple[RoundRecord, ...]
    initial: WeightDistribution
    stop_reason: Optional[str] = None
    extras: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        records = tuple(self.records)
        for expected, record in enumerate(records, start=1):
            if record.t != expected:
                raise ValueError(f"Trace records must be contiguous from t=1; found t={record.t} at {expected}")
        object.__setattr__(self, "records", records)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def epsilons(self) -> np.ndarray:
        return np.array([r.epsilon for r in self.records], dtype=np.float64)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([r.alpha for r in self.records], dtype=np.float64)

    @property
    def edges(self) -> np.ndarray:
        return np.array([r.edge for r in self.records], dtype=np.float64)

    @property
    def hypothesis_ids(self) -> list[str]:
        return [r.hypothesis_id for r in self.records]

    def weights_after(self) -> np.ndarray:
        """Matrix (T, m) of post-update weights."""
        if not self.records:
            return np.empty((0, self.initial.m))
        return np.vstack([r.w_after.w for r in self.records])

    def orbit(self) -> list[WeightDistribution]:
        """W_0, W_1, ..., W_T."""
        return [self.initial] + [r.w_after for r in self.records]
