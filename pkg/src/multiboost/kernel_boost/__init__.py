"""Residual boosting for regression and its boosting kernel."""

from .smoother import (
    SmootherState,
    boost_regression,
    boosting_kernel,
    kernel_estimate,
    rbf_prior,
    residual_norms,
)

__all__ = [
    "SmootherState",
    "boost_regression",
    "boosting_kernel",
    "kernel_estimate",
    "rbf_prior",
    "residual_norms",
]
