"""Quantized kernel recursive least squares model.

The weights satisfy beta = (Lambda Psi + alpha I)^-1 dbar after every update,
where Psi is the Gram matrix of the code vectors, Lambda = diag(counts) and
dbar holds the accumulated targets of each region. The inverse of the system
matrix is maintained incrementally: a merge changes one row of the system
(rank-one, Sherman-Morrison) and a new center borders it with one row and one
column (block inverse).
"""

import logging
import warnings
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from app.common.exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    IllConditionedError,
    ModelFormatError,
    UntrainedPredictorError,
)
from app.qkrls.codebook import Codebook
from app.qkrls.kernel import KernelParams, gaussian_kernel_matrix

logger = logging.getLogger(__name__)

MODEL_VERSION = 1

# Pivots below this (relative to the matrix scale) mean the update cannot be trusted
_PIVOT_TOLERANCE = 1e-12
# Largest refinement correction, relative to the weights, tolerated before the
# running inverse is rebuilt from the dense system
_RESYNC_TOLERANCE = 1e-6
# Only checked for alpha == 0, where nothing bounds the spectrum away from zero
_MAX_CONDITION = 1e12


class QkrlsModel:
    """Multi-output QKRLS predictor over lag vectors of s sensors with k lags."""

    def __init__(
        self,
        s: int,
        k: int,
        kernel: Optional[KernelParams] = None,
        alpha: float = 0.01,
        eps_u: float = 0.3,
    ):
        """Initialize an untrained model.

        Args:
            s: Number of output sensors
            k: Number of lags per sensor (input dimension is s * k)
            kernel: Gaussian kernel parameters
            alpha: Regularization factor (>= 0; 0 disables regularization)
            eps_u: Quantization size
        """
        if s < 1 or k < 1:
            raise ConfigurationError("s/k", {"reason": "must be >= 1", "s": s, "k": k})
        if not np.isfinite(alpha) or alpha < 0:
            raise ConfigurationError("alpha", {"reason": "must be >= 0", "value": alpha})
        self.s = int(s)
        self.k = int(k)
        self.kernel = kernel or KernelParams()
        self.alpha = float(alpha)
        self.codebook = Codebook(eps_u=eps_u, input_dim=self.s * self.k, output_dim=self.s)
        self._gram = np.empty((0, 0))
        self._inverse = np.empty((0, 0))
        self._beta = np.empty((0, self.s))

    @property
    def input_dim(self) -> int:
        """Dimension of lag vectors."""
        return self.s * self.k

    @property
    def eps_u(self) -> float:
        """Quantization size."""
        return self.codebook.eps_u

    @property
    def n_centers(self) -> int:
        """Codebook size n_L."""
        return len(self.codebook)

    @property
    def gram(self) -> np.ndarray:
        """Gram matrix of the code vectors."""
        return self._gram

    @property
    def beta(self) -> np.ndarray:
        """Weights, shape (n_L, s)."""
        return self._beta

    def _check_input(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.size != self.input_dim:
            raise DimensionMismatchError(self.input_dim, x.size)
        return x

    def _require_trained(self) -> None:
        if self.n_centers == 0:
            raise UntrainedPredictorError()

    def update(self, x, d) -> "QkrlsModel":
        """Process one training sample (x, d) and refresh the weights."""
        x = self._check_input(x)
        d = np.asarray(d, dtype=float).reshape(-1)
        if d.size != self.s:
            raise DimensionMismatchError(self.s, d.size)

        index, was_new = self.codebook.quantize(x)
        self.codebook.accumulate(index, d)
        if was_new:
            self._grow_system(x)
        else:
            self._merge_into(index - 1)
        self._beta = self._refined_weights()
        return self

    def _grow_system(self, x: np.ndarray) -> None:
        n = self.n_centers - 1
        corner = 1.0 + self.alpha
        if n == 0:
            self._gram = np.ones((1, 1))
            self._inverse = np.array([[1.0 / corner]])
            return

        h = gaussian_kernel_matrix(x[None, :], self.codebook.centers[:n], self.kernel)[0]
        gram = np.empty((n + 1, n + 1))
        gram[:n, :n] = self._gram
        gram[n, :n] = h
        gram[:n, n] = h
        gram[n, n] = 1.0

        # new column is Lambda h over the old regions, new row is 1 * h
        u = self.codebook.counts[:n] * h
        q_u = self._inverse @ u
        h_q = h @ self._inverse
        schur = corner - h @ q_u
        if abs(schur) <= _PIVOT_TOLERANCE * corner:
            raise IllConditionedError({"schur_complement": float(schur), "n_centers": n + 1})

        inverse = np.empty((n + 1, n + 1))
        inverse[:n, :n] = self._inverse + np.outer(q_u, h_q) / schur
        inverse[:n, n] = -q_u / schur
        inverse[n, :n] = -h_q / schur
        inverse[n, n] = 1.0 / schur
        self._gram = gram
        self._inverse = inverse

    def _merge_into(self, position: int) -> None:
        # Lambda gains one count in row `position`: A += e_p * Psi[p, :]
        g = self._gram[position]
        q_e = self._inverse[:, position]
        g_q = g @ self._inverse
        denominator = 1.0 + g @ q_e
        if abs(denominator) <= _PIVOT_TOLERANCE:
            raise IllConditionedError({"denominator": float(denominator), "region": position + 1})
        self._inverse = self._inverse - np.outer(q_e, g_q) / denominator

    def _residual(self, beta: np.ndarray) -> np.ndarray:
        system_beta = self.codebook.counts[:, None] * (self._gram @ beta) + self.alpha * beta
        return self.codebook.dbar - system_beta

    def _refined_weights(self) -> np.ndarray:
        # running inverse plus one step of iterative refinement against the dense system
        beta = self._inverse @ self.codebook.dbar
        correction = self._inverse @ self._residual(beta)
        if np.max(np.abs(correction)) > _RESYNC_TOLERANCE * max(1.0, np.max(np.abs(beta))):
            logger.debug("Rebuilding the inverse of the %d-region system", self.n_centers)
            self._inverse = _dense_inverse(self.codebook, self._gram, self.alpha)
            beta = self._inverse @ self.codebook.dbar
            correction = self._inverse @ self._residual(beta)
        return beta + correction

    def predict(self, x) -> np.ndarray:
        """Kernel expansion sum_n beta_n kappa(x, c_n), shape (s,)."""
        x = self._check_input(x)
        self._require_trained()
        weights = gaussian_kernel_matrix(x[None, :], self.codebook.centers, self.kernel)[0]
        return weights @ self._beta

    def predict_batch(self, X) -> np.ndarray:
        """Predict every row of X, shape (m, s)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.input_dim:
            raise DimensionMismatchError(self.input_dim, X.shape[1])
        self._require_trained()
        return gaussian_kernel_matrix(X, self.codebook.centers, self.kernel) @ self._beta

    def assign_state(self, x) -> int:
        """Region of the nearest code vector (1-based); ties go to the smallest index."""
        x = self._check_input(x)
        self._require_trained()
        index, _ = self.codebook.nearest(x)
        return index

    def assign_states(self, X) -> List[int]:
        """assign_state for every row of X."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.input_dim:
            raise DimensionMismatchError(self.input_dim, X.shape[1])
        self._require_trained()
        return [self.codebook.nearest(row)[0] for row in X]

    def solve(self) -> np.ndarray:
        """Direct dense solve of the current state (see batch_solve)."""
        return batch_solve(self.codebook, self.alpha, self.kernel)

    def finalize(self) -> "QkrlsModel":
        """Replace the incrementally maintained weights by the direct solve."""
        if self.n_centers:
            self._beta = self.solve()
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Versioned model document."""
        return {
            "version": MODEL_VERSION,
            "s": self.s,
            "k": self.k,
            "sigma": self.kernel.sigma,
            "alpha": self.alpha,
            "eps_u": self.eps_u,
            "centers": self.codebook.centers.tolist(),
            "counts": [int(c) for c in self.codebook.counts],
            "dbar": self.codebook.dbar.tolist(),
            "beta": self._beta.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], source: str = "<model>") -> "QkrlsModel":
        """Rebuild a model from its document; beta is kept exactly as stored."""
        if not isinstance(data, dict):
            raise ModelFormatError(source, "document is not a JSON object")
        version = data.get("version")
        if version != MODEL_VERSION:
            raise ModelFormatError(
                source, f"unsupported version {version!r}, expected {MODEL_VERSION}"
            )
        required = ["s", "k", "sigma", "alpha", "eps_u", "centers", "counts", "dbar", "beta"]
        missing = [key for key in required if key not in data]
        if missing:
            raise ModelFormatError(source, f"missing fields {missing}")

        try:
            model = cls(
                s=int(data["s"]),
                k=int(data["k"]),
                kernel=KernelParams(float(data["sigma"])),
                alpha=float(data["alpha"]),
                eps_u=float(data["eps_u"]),
            )
            model.codebook = Codebook.from_arrays(
                model.eps_u,
                data["centers"],
                data["counts"],
                data["dbar"],
                input_dim=model.input_dim,
                output_dim=model.s,
            )
            beta = np.asarray(data["beta"], dtype=float).reshape(model.n_centers, model.s)
        except (TypeError, ValueError) as e:
            raise ModelFormatError(source, f"inconsistent shapes or values: {e}") from e
        except ConfigurationError as e:
            raise ModelFormatError(source, e.message) from e

        if model.n_centers:
            centers = model.codebook.centers
            model._gram = gaussian_kernel_matrix(centers, centers, model.kernel)
            model._inverse = _dense_inverse(model.codebook, model._gram, model.alpha)
        model._beta = beta
        return model


def _system_matrix(codebook: Codebook, gram: np.ndarray, alpha: float) -> np.ndarray:
    return codebook.counts[:, None] * gram + alpha * np.eye(len(codebook))


def _dense_inverse(codebook: Codebook, gram: np.ndarray, alpha: float) -> np.ndarray:
    try:
        return np.linalg.inv(_system_matrix(codebook, gram, alpha))
    except np.linalg.LinAlgError as e:
        raise IllConditionedError({"reason": str(e), "n_centers": len(codebook)}) from e


def batch_solve(codebook: Codebook, alpha: float, kernel: KernelParams) -> np.ndarray:
    """Solve (Lambda Psi + alpha I) beta = dbar with a dense LU factorization.

    Lambda Psi is not symmetric when counts differ, so a general LU with partial
    pivoting is used rather than a Cholesky factorization.
    """
    if not np.isfinite(alpha) or alpha < 0:
        raise ConfigurationError("alpha", {"reason": "must be >= 0", "value": alpha})
    if len(codebook) == 0:
        return np.empty((0, codebook.output_dim))

    centers = codebook.centers
    system = _system_matrix(codebook, gaussian_kernel_matrix(centers, centers, kernel), alpha)
    if alpha == 0:
        condition = np.linalg.cond(system)
        if not np.isfinite(condition) or condition > _MAX_CONDITION:
            raise IllConditionedError({"condition_number": float(condition)})
    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        try:
            factors = lu_factor(system)
        except LinAlgWarning as e:
            raise IllConditionedError({"reason": str(e)}) from e
    return lu_solve(factors, codebook.dbar)


def update(model: QkrlsModel, x, d) -> QkrlsModel:
    """Functional form of QkrlsModel.update."""
    return model.update(x, d)


def predict(model: QkrlsModel, x) -> np.ndarray:
    """Functional form of QkrlsModel.predict."""
    return model.predict(x)


def assign_state(model: QkrlsModel, x) -> int:
    """Functional form of QkrlsModel.assign_state."""
    return model.assign_state(x)
