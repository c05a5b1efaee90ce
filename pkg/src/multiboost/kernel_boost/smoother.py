"""
Boosting for regression with a linear smoother.

With prior covariance P and noise variance sigma2 the smoother is
S = P (P + sigma2 I)^{-1}. Residual boosting H_t = H_{t-1} + S (y - H_{t-1})
starting from H_0 = S y gives H_t = S sum_{i<=t} (I - S)^i y, which is itself a
kernel estimator whose kernel is the boosting kernel
P_{t+1} = sigma2 (I - S)^{-(t+1)} - sigma2 I.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, lu_factor, lu_solve
from sklearn.metrics.pairwise import rbf_kernel

from multiboost.core.errors import DimensionMismatchError, NumericalError

logger = logging.getLogger(__name__)

PSD_TOL = 1e-10
# Beyond this condition number (I - S) is treated as singular.
MAX_CONDITION = 1e12


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def _shifted_factor(P: np.ndarray, sigma2: float):
    try:
        return cho_factor(P + sigma2 * np.eye(P.shape[0]))
    except LinAlgError as e:
        raise NumericalError(f"P + sigma2 I is not positive definite: {e}") from e


@dataclass(frozen=True, eq=False)
class SmootherState:
    """
    Prior covariance, noise variance and the induced smoother matrix.

    Build with `SmootherState.from_prior(P, sigma2)`; S is computed by a Cholesky
    solve, never by an explicit inverse.
    """

    P: np.ndarray
    sigma2: float
    S: np.ndarray

    @classmethod
    def from_prior(cls, P: np.ndarray, sigma2: float) -> "SmootherState":
        """
        Raises:
            ValueError: If sigma2 <= 0 or P is not symmetric PSD.
        """
        P = np.asarray(P, dtype=np.float64)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise DimensionMismatchError(f"Prior covariance must be square, got shape {P.shape}")
        if not sigma2 > 0:
            raise ValueError(f"Noise variance must be positive, got {sigma2}")
        scale = max(1.0, float(np.max(np.abs(P)))) if P.size else 1.0
        if not np.allclose(P, P.T, rtol=0.0, atol=PSD_TOL * scale):
            raise ValueError("Prior covariance must be symmetric")
        smallest = float(np.linalg.eigvalsh(P).min())
        if smallest < -PSD_TOL * scale:
            raise ValueError(f"Prior covariance is not PSD (smallest eigenvalue {smallest:.3g})")

        # P and (P + sigma2 I)^{-1} commute, so S = (P + sigma2 I)^{-1} P
        S = cho_solve(_shifted_factor(P, sigma2), P)
        return cls(P=_frozen(P), sigma2=float(sigma2), S=_frozen(S))

    @property
    def m(self) -> int:
        return int(self.P.shape[0])


def boost_regression(y: np.ndarray, st: SmootherState, T: int) -> np.ndarray:
    """
    Residual boosting with a fixed smoother.

    Args:
        y: Targets of length m
        st: Smoother state
        T: Number of boosting rounds after the initial fit (>= 1)

    Returns:
        Array of shape (T + 1, m); row k is H_k, with H_0 = S y

    Example:
        >>> st = SmootherState.from_prior(np.eye(2), 1.0)
        >>> boost_regression(np.ones(2), st, 2)[:, 0]
        array([0.5  , 0.75 , 0.875])
    """
    y = np.asarray(y, dtype=np.float64)
    if T < 1:
        raise ValueError(f"Number of rounds must be >= 1, got {T}")
    if y.shape != (st.m,):
        raise DimensionMismatchError(f"Targets have shape {y.shape}, smoother expects ({st.m},)")

    estimates = np.empty((T + 1, st.m))
    estimates[0] = st.S @ y
    for t in range(1, T + 1):
        residual = y - estimates[t - 1]
        estimates[t] = estimates[t - 1] + st.S @ residual
    return estimates


def boosting_kernel(st: SmootherState, t: int) -> np.ndarray:
    """
    P_t = sigma2 (I - S)^{-t} - sigma2 I, by t repeated LU solves against I - S.

    Raises:
        NumericalError: If I - S is numerically singular.
    """
    if t < 1:
        raise ValueError(f"Kernel index must be >= 1, got {t}")
    identity = np.eye(st.m)
    complement = identity - st.S
    condition = np.linalg.cond(complement)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise NumericalError(f"I - S is singular to working precision (condition {condition:.3g})")

    factor = lu_factor(complement)
    power = identity
    for _ in range(t):
        power = lu_solve(factor, power)
    kernel = st.sigma2 * power - st.sigma2 * identity
    return (kernel + kernel.T) / 2.0


def kernel_estimate(P: np.ndarray, sigma2: float, y: np.ndarray) -> np.ndarray:
    """
    Kernel estimator P (P + sigma2 I)^{-1} y, via a Cholesky solve.

    Example:
        >>> kernel_estimate(np.eye(2), 1.0, np.array([2.0, 4.0]))
        array([1., 2.])
    """
    P = np.asarray(P, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1] or y.shape != (P.shape[0],):
        raise DimensionMismatchError(f"Kernel shape {P.shape} does not match targets {y.shape}")
    if not sigma2 > 0:
        raise ValueError(f"Noise variance must be positive, got {sigma2}")
    return P @ cho_solve(_shifted_factor(P, sigma2), y)


def rbf_prior(X: np.ndarray, lam: float = 1.0, length_scale: float = 1.0) -> np.ndarray:
    """Prior covariance P = lam * K with a Gaussian kernel K."""
    return lam * rbf_kernel(np.asarray(X, dtype=np.float64), gamma=1.0 / (2.0 * length_scale**2))


def residual_norms(y: np.ndarray, estimates: np.ndarray) -> np.ndarray:
    """||y - H_t||_2 for every row of `estimates`."""
    return np.linalg.norm(np.asarray(y)[None, :] - estimates, axis=1)
