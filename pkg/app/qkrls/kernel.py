"""Gaussian kernel."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from app.common.exceptions import ConfigurationError, DimensionMismatchError


@dataclass(frozen=True)
class KernelParams:
    """Gaussian kernel width (input units after normalization)."""

    sigma: float = 0.5

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma <= 0:
            raise ConfigurationError("sigma", {"reason": "must be > 0", "value": self.sigma})


def gaussian_kernel(x, y, params: KernelParams) -> float:
    """Return exp(-||x - y||^2 / (2 sigma^2))."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise DimensionMismatchError(x.size, y.size)
    diff = x - y
    return float(np.exp(-np.dot(diff, diff) / (2.0 * params.sigma**2)))


def gaussian_kernel_matrix(X, Y, params: KernelParams) -> np.ndarray:
    """Kernel matrix K[i, j] = kappa(X[i], Y[j]) for row-stacked inputs."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if X.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(Y.shape[1], X.shape[1])
    return np.exp(-cdist(X, Y, "sqeuclidean") / (2.0 * params.sigma**2))
