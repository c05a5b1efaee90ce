"""
Cycle detection on weight orbits and on hypothesis sequences.

Candidate periods come from hashing orbit points on a grid of cell `tol` (two
grids offset by half a cell); each candidate is then verified exactly over the
whole tail of the orbit.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from multiboost.core.weights import WeightDistribution

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
# Previous occurrences in a bucket paired with each new point.
BUCKET_LOOKBACK = 8


@dataclass(frozen=True)
class CycleReport:
    """
    Outcome of a cycle search.

    If entered, the orbit satisfies ||w_{t+p} - w_t||_inf <= tolerance for every
    t >= entry_time. `hypothesis_cycle` lists the hypotheses chosen at the cycle
    points. The hypothesis-level cycle is reported separately since one does not
    imply the other.
    """

    entered: bool
    entry_time: int
    period: int
    tolerance: float
    cycle_points: list[WeightDistribution] = field(default_factory=list)
    hypothesis_cycle: list[str] = field(default_factory=list)
    hypothesis_entered: bool = False
    hypothesis_entry_time: int = 0
    hypothesis_period: int = 0

    @property
    def distinct_hypotheses(self) -> int:
        return len(set(self.hypothesis_cycle))

    def to_dict(self) -> dict[str, Any]:
        return {
            "entered": self.entered,
            "entry_time": self.entry_time,
            "period": self.period,
            "tolerance": self.tolerance,
            "cycle_points": [p.w.tolist() for p in self.cycle_points],
            "hypothesis_cycle": list(self.hypothesis_cycle),
            "distinct_hypotheses": self.distinct_hypotheses,
            "hypothesis_entered": self.hypothesis_entered,
            "hypothesis_entry_time": self.hypothesis_entry_time,
            "hypothesis_period": self.hypothesis_period,
        }


def _candidate_periods(points: np.ndarray, tol: float) -> set[int]:
    n = points.shape[0]
    periods: set[int] = set()
    cell = tol if tol > 0 else 1e-15
    for offset in (0.0, 0.5):
        keys = np.floor(points / cell + offset).astype(np.int64)
        buckets: dict[bytes, list[int]] = defaultdict(list)
        for t in range(n):
            key = keys[t].tobytes()
            for previous in buckets[key][-BUCKET_LOOKBACK:]:
                periods.add(t - previous)
            buckets[key].append(t)
    return periods


def _entry_time(distances: np.ndarray, tol: float) -> int:
    """First T0 with distances[t] <= tol for all t >= T0."""
    bad = np.flatnonzero(distances > tol)
    return int(bad[-1]) + 1 if bad.size else 0


def _best_cycle(points: np.ndarray, periods: set[int], tol: float) -> Optional[tuple[int, int]]:
    """Smallest (T0, p) among verified candidates; at least one full period must be checked."""
    n = points.shape[0]
    best: Optional[tuple[int, int]] = None
    for p in sorted(periods):
        if p < 1 or 2 * p > n:
            continue
        diffs = points[p:] - points[:-p]
        distances = np.max(np.abs(diffs), axis=1) if diffs.ndim == 2 else np.abs(diffs)
        entry = _entry_time(distances, tol)
        if entry <= n - 2 * p and (best is None or (entry, p) < best):
            best = (entry, p)
    return best


def detect_hypothesis_cycle(hypothesis_ids: Sequence[str]) -> tuple[bool, int, int]:
    """
    Exact cycle in a sequence of hypothesis ids.

    Returns:
        Tuple of (entered, entry_time, period)
    """
    if len(hypothesis_ids) < 2:
        return False, 0, 0
    codes: dict[str, int] = {}
    sequence = np.array([codes.setdefault(h, len(codes)) for h in hypothesis_ids], dtype=np.float64)
    last_seen: dict[float, list[int]] = defaultdict(list)
    periods: set[int] = set()
    for t, code in enumerate(sequence):
        for previous in last_seen[code][-BUCKET_LOOKBACK:]:
            periods.add(t - previous)
        last_seen[code].append(t)
    best = _best_cycle(sequence, periods, 0.0)
    if best is None:
        return False, 0, 0
    return True, best[0], best[1]


def detect_cycle(
    orbit: Sequence[WeightDistribution],
    tol: float = DEFAULT_TOL,
    hypothesis_ids: Optional[Sequence[str]] = None,
) -> CycleReport:
    """
    Find the earliest entry into a periodic regime of a weight orbit.

    Among verified candidates the pair with the smallest entry time T0 wins, then
    the smallest period p; a larger tolerance therefore never reports a later T0.

    Args:
        orbit: W_0, W_1, ... (length >= 2)
        tol: L-infinity tolerance
        hypothesis_ids: Optional ids of h_1, h_2, ... where h_{t+1} was trained on W_t

    Returns:
        CycleReport (entered=False when no cycle is found)

    Example:
        >>> a, b = WeightDistribution(np.array([0.5, 0.5])), WeightDistribution(np.array([0.25, 0.75]))
        >>> report = detect_cycle([a, b, a, b])
        >>> report.entry_time, report.period
        (0, 2)
    """
    if len(orbit) < 2:
        raise ValueError(f"Orbit must have at least 2 points, got {len(orbit)}")
    points = np.vstack([w.w for w in orbit])

    hyp_entered, hyp_entry, hyp_period = (False, 0, 0)
    if hypothesis_ids:
        hyp_entered, hyp_entry, hyp_period = detect_hypothesis_cycle(hypothesis_ids)

    best = _best_cycle(points, _candidate_periods(points, tol), tol)
    if best is None:
        logger.info(f"No weight cycle within tol={tol} over {len(orbit)} orbit points")
        return CycleReport(
            entered=False,
            entry_time=0,
            period=0,
            tolerance=tol,
            hypothesis_entered=hyp_entered,
            hypothesis_entry_time=hyp_entry,
            hypothesis_period=hyp_period,
        )

    entry, period = best
    cycle_ids = list(hypothesis_ids[entry : entry + period]) if hypothesis_ids else []
    logger.info(
        f"Weight cycle entered at T0={entry} with period p={period} "
        f"({len(set(cycle_ids))} distinct hypotheses)"
    )
    return CycleReport(
        entered=True,
        entry_time=entry,
        period=period,
        tolerance=tol,
        cycle_points=list(orbit[entry : entry + period]),
        hypothesis_cycle=cycle_ids,
        hypothesis_entered=hyp_entered,
        hypothesis_entry_time=hyp_entry,
        hypothesis_period=hyp_period,
    )
