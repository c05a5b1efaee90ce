"""AdaBoost as a dynamical system over the simplex."""

from .cycles import CycleReport, detect_cycle, detect_hypothesis_cycle
from .ergodic import EdgeBoundReport, birkhoff_average, cycle_mean, edge_lower_bound_check
from .toy import toy_dataset, toy_label
from .weight_map import MapResult, iterate_map, orbit_from_trace, weight_map

__all__ = [
    "CycleReport",
    "EdgeBoundReport",
    "MapResult",
    "birkhoff_average",
    "cycle_mean",
    "detect_cycle",
    "detect_hypothesis_cycle",
    "edge_lower_bound_check",
    "iterate_map",
    "orbit_from_trace",
    "toy_dataset",
    "toy_label",
    "weight_map",
]
