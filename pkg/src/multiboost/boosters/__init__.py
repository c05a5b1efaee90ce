"""The equivalent formulations of AdaBoost."""

from .additive import adaboost_real_additive
from .common import optimal_alpha
from .config import BoostConfig
from .discrete import adaboost_discrete, discrete_step
from .gradient import adaboost_gradient_view, cost_weights
from .mirror import max_edge, mirror_descent_boost
from .multiclass import adaboost_m1, adaboost_real, adaboost_samme, pseudo_loss
from .poe import poe_boost, poe_posterior, poe_update
from .projection import (
    ProjectionResult,
    entropy_projection_update,
    kl_divergence,
    pythagoras_residual,
    three_point_residual,
    totally_corrective_update,
)

__all__ = [
    "BoostConfig",
    "ProjectionResult",
    "adaboost_discrete",
    "adaboost_gradient_view",
    "adaboost_m1",
    "adaboost_real",
    "adaboost_real_additive",
    "adaboost_samme",
    "cost_weights",
    "discrete_step",
    "entropy_projection_update",
    "kl_divergence",
    "max_edge",
    "mirror_descent_boost",
    "optimal_alpha",
    "poe_boost",
    "poe_posterior",
    "poe_update",
    "pseudo_loss",
    "pythagoras_residual",
    "three_point_residual",
    "totally_corrective_update",
]
