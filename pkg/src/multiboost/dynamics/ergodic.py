"""
Time averages along orbits and the edge lower bound.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from multiboost.core.trace import BoostTrace
from multiboost.core.weights import WeightDistribution
from multiboost.dynamics.cycles import CycleReport

logger = logging.getLogger(__name__)

Observable = Callable[[WeightDistribution], float]

BOUND_SLACK = 1e-12


def birkhoff_average(
    orbit: Sequence[WeightDistribution], f: Observable, start: int = 0
) -> np.ndarray:
    """
    Running means (1/T) sum_{t<T} f(w_{start+t}) for T = 1, 2, ...

    Example:
        >>> a, b = WeightDistribution(np.array([1.0, 0.0])), WeightDistribution(np.array([0.0, 1.0]))
        >>> birkhoff_average([a, b, a, b], lambda w: w.w[0])
        array([1.        , 0.5       , 0.66666667, 0.5       ])
    """
    if not orbit:
        raise ValueError("Orbit must be non-empty")
    if not 0 <= start < len(orbit):
        raise ValueError(f"Start index {start} outside orbit of length {len(orbit)}")
    values = np.array([f(w) for w in orbit[start:]], dtype=np.float64)
    return np.cumsum(values) / np.arange(1, values.size + 1)


def cycle_mean(report: CycleReport, f: Observable) -> float:
    """(1/p) sum of f over the detected cycle points."""
    if not report.entered:
        raise ValueError("No cycle was detected")
    return float(np.mean([f(w) for w in report.cycle_points]))


@dataclass(frozen=True)
class EdgeBoundReport:
    """
    Per-round check of w^T eta_{h_t} >= 2^{-(t+1)}.

    Round index t is 1-based and the edge is measured under the weights h_t was
    trained on (the trace's `edge` field).
    """

    rounds: list[int]
    edges: list[float]
    bounds: list[float]
    satisfied: list[bool]

    @property
    def fraction_satisfied(self) -> float:
        return float(np.mean(self.satisfied)) if self.satisfied else 1.0

    @property
    def min_edge(self) -> float:
        return float(min(self.edges)) if self.edges else float("nan")

    def to_dict(self) -> dict[str, Any]:
        return {
            "indexing": "t is 1-based; edge uses W_{t-1}, the weights h_t was trained on",
            "fraction_satisfied": self.fraction_satisfied,
            "min_edge": self.min_edge,
            "rounds": [
                {"t": t, "edge": e, "bound": b, "satisfied": s}
                for t, e, b, s in zip(self.rounds, self.edges, self.bounds, self.satisfied)
            ],
        }


def edge_lower_bound_check(trace: BoostTrace) -> EdgeBoundReport:
    """Evaluate the edge lower bound on every round; violations are logged, not raised."""
    rounds, edges, bounds, satisfied = [], [], [], []
    for record in trace.records:
        bound = 2.0 ** (-(record.t + 1))
        ok = record.edge >= bound - BOUND_SLACK
        if not ok:
            logger.warning(f"Edge bound violated at t={record.t}: edge {record.edge:.3g} < {bound:.3g}")
        rounds.append(record.t)
        edges.append(record.edge)
        bounds.append(bound)
        satisfied.append(bool(ok))
    return EdgeBoundReport(rounds, edges, bounds, satisfied)
