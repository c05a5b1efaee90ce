"""
Brute-force weak learner over an explicit hypothesis class.

Serves as ground truth for the optimized searches: it evaluates every member's
weighted error independently and applies the same tie rule.
"""

from typing import Iterable

import numpy as np

from multiboost.core.dataset import Dataset
from multiboost.core.hypotheses import WeakHypothesis, weighted_error
from multiboost.core.weights import WeightDistribution
from multiboost.learners.stumps import first_within_tolerance


def oracle_best_hypothesis(
    data: Dataset,
    w: WeightDistribution,
    hypothesis_class: Iterable[WeakHypothesis],
) -> WeakHypothesis:
    """
    Exhaustive argmin of the weighted error; ties go to the first enumerated member.

    Raises:
        ValueError: If the class is empty.
    """
    members = list(hypothesis_class)
    if not members:
        raise ValueError("Hypothesis class is empty")
    errors = np.array([weighted_error(h, data, w) for h in members])
    return members[first_within_tolerance(errors)]
