"""Online vector quantization codebook.

Centers are frozen at the value of the first input assigned to them and are
kept in first-occurrence order, so the last center is the most recently
discovered region. Region indices returned by this module are 1-based
(region 1 .. n_L).
"""

import logging
from typing import Optional, Tuple

import numpy as np

from app.common.exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    UntrainedPredictorError,
)

logger = logging.getLogger(__name__)

_INITIAL_CAPACITY = 32


class Codebook:
    """Code vectors with per-region sample counts and accumulated targets."""

    def __init__(self, eps_u: float = 0.3, input_dim: Optional[int] = None, output_dim: int = 1):
        """Initialize an empty codebook.

        Args:
            eps_u: Quantization size; an input within this distance of its nearest
                center is merged into it
            input_dim: Dimension of code vectors (inferred from the first input if None)
            output_dim: Dimension of the accumulated targets
        """
        if not np.isfinite(eps_u) or eps_u < 0:
            raise ConfigurationError("eps_u", {"reason": "must be >= 0", "value": eps_u})
        if output_dim < 1:
            raise ConfigurationError("output_dim", {"reason": "must be >= 1", "value": output_dim})
        self.eps_u = float(eps_u)
        self.input_dim = input_dim
        self.output_dim = int(output_dim)
        self._size = 0
        self._centers = np.empty((0, input_dim or 0))
        self._counts = np.empty(0, dtype=np.int64)
        self._dbar = np.empty((0, self.output_dim))

    def __len__(self) -> int:
        return self._size

    @property
    def centers(self) -> np.ndarray:
        """Code vectors, shape (n_L, input_dim)."""
        return self._centers[: self._size]

    @property
    def counts(self) -> np.ndarray:
        """Samples per region M_1..M_nL."""
        return self._counts[: self._size]

    @property
    def dbar(self) -> np.ndarray:
        """Accumulated targets per region, shape (n_L, output_dim)."""
        return self._dbar[: self._size]

    @property
    def total_count(self) -> int:
        """Number of samples quantized so far."""
        return int(self.counts.sum())

    def _check_input(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1)
        if self.input_dim is None:
            self.input_dim = x.size
            self._centers = np.empty((0, x.size))
        if x.size != self.input_dim:
            raise DimensionMismatchError(self.input_dim, x.size)
        return x

    def distances(self, x) -> np.ndarray:
        """Euclidean distance from x to every center."""
        x = self._check_input(x)
        return np.linalg.norm(self.centers - x, axis=1)

    def nearest(self, x) -> Tuple[int, float]:
        """Return (1-based index, distance) of the nearest center; ties go to the smallest index."""
        if self._size == 0:
            raise UntrainedPredictorError()
        dist = self.distances(x)
        position = int(np.argmin(dist))
        return position + 1, float(dist[position])

    def quantize(self, x) -> Tuple[int, bool]:
        """Assign x to a region, creating a new center when it is farther than eps_u from all.

        Returns:
            (1-based region index, whether a new center was created)
        """
        x = self._check_input(x)
        if self._size > 0:
            index, distance = self.nearest(x)
            if distance <= self.eps_u:
                self._counts[index - 1] += 1
                return index, False
        self._append(x)
        return self._size, True

    def accumulate(self, index: int, d) -> None:
        """Add target d to the accumulated targets of region index (1-based)."""
        d = np.asarray(d, dtype=float).reshape(-1)
        if d.size != self.output_dim:
            raise DimensionMismatchError(self.output_dim, d.size)
        self._dbar[index - 1] += d

    def _append(self, x: np.ndarray) -> None:
        if self._size == self._centers.shape[0]:
            capacity = max(_INITIAL_CAPACITY, 2 * self._size)
            self._centers = _grow(self._centers, capacity)
            self._counts = _grow(self._counts, capacity)
            self._dbar = _grow(self._dbar, capacity)
        self._centers[self._size] = x
        self._counts[self._size] = 1
        self._dbar[self._size] = 0.0
        self._size += 1
        logger.debug("New code vector %d", self._size)

    @classmethod
    def from_arrays(
        cls, eps_u: float, centers, counts, dbar, input_dim: int, output_dim: int
    ) -> "Codebook":
        """Rebuild a codebook from stored arrays without re-quantizing."""
        counts = np.asarray(counts, dtype=np.int64).reshape(-1)
        centers = np.asarray(centers, dtype=float).reshape(counts.size, input_dim)
        dbar = np.asarray(dbar, dtype=float).reshape(counts.size, output_dim)
        if np.any(counts < 1):
            raise ConfigurationError("counts", {"reason": "every region needs at least one sample"})
        codebook = cls(eps_u=eps_u, input_dim=input_dim, output_dim=output_dim)
        codebook._centers = centers.copy()
        codebook._counts = counts.copy()
        codebook._dbar = dbar.copy()
        codebook._size = counts.size
        return codebook


def _grow(buffer: np.ndarray, capacity: int) -> np.ndarray:
    grown = np.zeros((capacity,) + buffer.shape[1:], dtype=buffer.dtype)
    grown[: buffer.shape[0]] = buffer
    return grown


def quantize(codebook: Codebook, x) -> Tuple[int, bool]:
    """Functional form of Codebook.quantize."""
    return codebook.quantize(x)
