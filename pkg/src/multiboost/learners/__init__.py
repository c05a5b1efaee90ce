"""Weak learners: stumps, multiclass stumps, trees and the brute-force oracle."""

from .confidence import ConfidenceStump, train_confidence_stump
from .factory import LearnerSpec, make_learner, make_plausibility_learner
from .multiclass import MulticlassStump, train_multiclass_stump, train_plausibility_stump
from .oracle import oracle_best_hypothesis
from .stumps import EDGE_TIE_TOL, TIE_TOL, DecisionStump, grid_dichotomies, stump_grid, train_stump
from .trees import DecisionTree, LeafPlausibility, train_plausibility_tree, train_tree

__all__ = [
    "EDGE_TIE_TOL",
    "TIE_TOL",
    "ConfidenceStump",
    "DecisionStump",
    "DecisionTree",
    "LearnerSpec",
    "LeafPlausibility",
    "MulticlassStump",
    "grid_dichotomies",
    "make_learner",
    "make_plausibility_learner",
    "oracle_best_hypothesis",
    "stump_grid",
    "train_confidence_stump",
    "train_multiclass_stump",
    "train_plausibility_stump",
    "train_plausibility_tree",
    "train_stump",
    "train_tree",
]
