"""
AdaBoost's weight update as an entropy (KL) projection.

The update W_t is the KL projection of W_{t-1} onto the hyperplane
{w : w^T eta_t = 0}; the totally corrective variant projects onto the
intersection of the hyperplanes of all hypotheses so far.
"""

import logging
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import rel_entr

from multiboost.boosters.common import clamp_epsilon, exponential_update, optimal_alpha
from multiboost.core.errors import DimensionMismatchError, InfeasibleProjectionError
from multiboost.core.weights import Dichotomy, WeightDistribution

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_SWEEPS = 10_000


class ProjectionResult(NamedTuple):
    weights: WeightDistribution
    alpha: float
    exact: bool  # False when no point of the simplex satisfies the constraint


def kl_divergence(p: WeightDistribution | np.ndarray, q: WeightDistribution | np.ndarray) -> float:
    """KL(p || q) = sum_i p_i log(p_i / q_i), with 0 log 0 = 0."""
    p_arr = p.w if isinstance(p, WeightDistribution) else np.asarray(p, dtype=np.float64)
    q_arr = q.w if isinstance(q, WeightDistribution) else np.asarray(q, dtype=np.float64)
    if p_arr.shape != q_arr.shape:
        raise DimensionMismatchError(f"KL arguments have shapes {p_arr.shape} and {q_arr.shape}")
    return float(np.sum(rel_entr(p_arr, q_arr)))


def entropy_projection_update(
    w_prev: WeightDistribution, eta: Dichotomy, eps_clamp: float = 1e-12
) -> ProjectionResult:
    """
    KL projection of w_prev onto {w : w^T eta = 0}.

    The projection is w_prev(i) exp(-alpha* eta_i) / Z(alpha*) where
    alpha* = argmin Z(alpha) = 1/2 log(w+ / w-), w+ and w- being the weight on
    samples with eta = +1 and eta = -1.

    Args:
        w_prev: Current weights
        eta: Dichotomy of the new hypothesis
        eps_clamp: Clamp applied when eta has a single sign

    Returns:
        ProjectionResult(weights, alpha, exact)

    Example:
        >>> w, alpha, exact = entropy_projection_update(
        ...     WeightDistribution.uniform(3), Dichotomy(np.array([1, -1, 1])))
        >>> w.w
        array([0.25, 0.5 , 0.25])
    """
    if w_prev.m != len(eta):
        raise DimensionMismatchError(f"Weights have length {w_prev.m}, dichotomy has {len(eta)}")

    w_plus = float(np.sum(w_prev.w[eta.eta > 0]))
    w_minus = float(np.sum(w_prev.w[eta.eta < 0]))

    if w_plus > 0.0 and w_minus > 0.0:
        alpha = 0.5 * float(np.log(w_plus / w_minus))
        exact = True
    else:
        eps_used, _ = clamp_epsilon(w_minus / (w_plus + w_minus), eps_clamp)
        alpha = optimal_alpha(eps_used)
        exact = False
        logger.warning("Dichotomy has a single sign under w_prev; no exact projection exists")

    weights, _ = exponential_update(w_prev, eta, alpha)
    return ProjectionResult(weights, alpha, exact)


def tilt(w_prev: WeightDistribution, eta: Dichotomy, alpha: float) -> WeightDistribution:
    """W(alpha) = w_prev exp(-alpha eta) / Z(alpha), the exponential family through w_prev."""
    return exponential_update(w_prev, eta, alpha)[0]


def pythagoras_residual(w_prev: WeightDistribution, eta: Dichotomy, alpha: float) -> float:
    """
    KL(W_{t-1} || W_t) - [KL(W_{t-1} || W_t(alpha)) + KL(W_t(alpha) || W_t)].

    Zero at alpha = 0 and alpha = alpha*; in general it equals
    (alpha* - alpha)(w_prev^T eta - W_t(alpha)^T eta), so this ordering of the
    arguments is not an identity.
    """
    projected = entropy_projection_update(w_prev, eta).weights
    tilted = tilt(w_prev, eta, alpha)
    return kl_divergence(w_prev, projected) - (
        kl_divergence(w_prev, tilted) + kl_divergence(tilted, projected)
    )


def three_point_residual(
    w_prev: WeightDistribution, eta: Dichotomy, w_feasible: WeightDistribution
) -> float:
    """
    KL(U || W_{t-1}) - [KL(U || W_t) + KL(W_t || W_{t-1})] for U on the hyperplane.

    The standard Bregman three-point identity; zero for every feasible U.
    """
    projected = entropy_projection_update(w_prev, eta).weights
    return kl_divergence(w_feasible, w_prev) - (
        kl_divergence(w_feasible, projected) + kl_divergence(projected, w_prev)
    )


def totally_corrective_update(
    w_ref: WeightDistribution,
    etas: Sequence[Dichotomy],
    tol: float = DEFAULT_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> WeightDistribution:
    """
    KL projection of w_ref onto the intersection of all hyperplanes w^T eta_s = 0.

    Computed by cyclic Bregman projections: sweep over the constraints, projecting
    onto each in turn, until max_s |w^T eta_s| <= tol.

    Raises:
        InfeasibleProjectionError: If a constraint cannot be met or the sweeps do
            not converge; the error carries a report dict.
    """
    if not etas:
        return w_ref
    for index, eta in enumerate(etas):
        if len(eta) != w_ref.m:
            raise DimensionMismatchError(f"Dichotomy {index} has length {len(eta)}, expected {w_ref.m}")
        if np.all(eta.eta > 0) or np.all(eta.eta < 0):
            raise InfeasibleProjectionError(
                f"Dichotomy {index} has a single sign; its hyperplane misses the simplex",
                report={"constraint": index, "sweeps": 0},
            )

    constraints = np.vstack([eta.eta for eta in etas])
    w = w_ref
    violation = float(np.max(np.abs(constraints @ w.w)))
    for sweep in range(1, max_sweeps + 1):
        for eta in etas:
            w = entropy_projection_update(w, eta).weights
        violation = float(np.max(np.abs(constraints @ w.w)))
        if violation <= tol:
            logger.debug(f"Totally corrective projection converged after {sweep} sweeps")
            return w

    report = {"sweeps": max_sweeps, "max_violation": violation, "constraints": len(etas)}
    logger.error(f"Totally corrective projection did not converge: {report}")
    raise InfeasibleProjectionError(
        f"No point within {tol} of all {len(etas)} constraints after {max_sweeps} sweeps",
        report=report,
    )
