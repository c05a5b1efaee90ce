"""
The AdaBoost update as a map on the simplex.
"""

from typing import NamedTuple, Optional

from multiboost.boosters.discrete import DiscreteStep, discrete_step
from multiboost.core.dataset import Dataset
from multiboost.core.trace import BoostTrace
from multiboost.core.weights import WeightDistribution
from multiboost.learners.factory import Learner
from multiboost.learners.stumps import train_stump


class MapResult(NamedTuple):
    weights: WeightDistribution
    fixed_point: bool  # True when eps = 1/2 and w is returned unchanged
    step: DiscreteStep


def weight_map(
    w: WeightDistribution,
    data: Dataset,
    learner: Optional[Learner] = None,
    eps_clamp: float = 1e-12,
) -> MapResult:
    """
    One full AdaBoost transition: train, compute eps and alpha, reweight, normalize.

    Uses the same step function as adaboost_discrete, so iterating it reproduces
    a discrete run exactly. When the best hypothesis has eps = 1/2 the map has a
    fixed point at w.
    """
    data.require_binary("weight_map")
    step = discrete_step(data, w, learner or train_stump, eps_clamp)
    if step.at_half:
        return MapResult(w, True, step)
    return MapResult(step.w_after, False, step)


def iterate_map(
    w: WeightDistribution,
    data: Dataset,
    steps: int,
    learner: Optional[Learner] = None,
    eps_clamp: float = 1e-12,
) -> tuple[list[WeightDistribution], list[str]]:
    """
    Orbit w, A(w), ..., A^steps(w) and the hypothesis id chosen at each step.
    """
    orbit = [w]
    ids: list[str] = []
    for _ in range(steps):
        result = weight_map(orbit[-1], data, learner, eps_clamp)
        orbit.append(result.weights)
        ids.append(result.step.hypothesis.hypothesis_id)
    return orbit, ids


def orbit_from_trace(trace: BoostTrace) -> tuple[list[WeightDistribution], list[str]]:
    """Weights W_0..W_T and hypothesis ids recorded by a run."""
    return trace.orbit(), trace.hypothesis_ids
