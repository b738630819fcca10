"""Fleet-wide min-max normalization and lag embedding."""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from app.common.exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    TrajectoryTooShortError,
)
from app.common.models import Normalization, TrainingPair, Trajectory

logger = logging.getLogger(__name__)


def fit_normalization(trajectories: Sequence[Trajectory]) -> Normalization:
    """Per-sensor global min/max over every cycle of every trajectory."""
    if not trajectories:
        raise ConfigurationError("trajectories", {"reason": "cannot normalize an empty fleet"})
    widths = {t.s for t in trajectories}
    if len(widths) != 1:
        raise DimensionMismatchError(min(widths), max(widths))

    stacked = np.concatenate([t.values for t in trajectories], axis=1)
    norm = Normalization(
        minimum=stacked.min(axis=1),
        maximum=stacked.max(axis=1),
        sensor_ids=trajectories[0].sensor_ids,
    )
    logger.debug("Fitted normalization over %d trajectories", len(trajectories))
    return norm


def _check_width(trajectory: Trajectory, norm: Normalization) -> None:
    if trajectory.s != norm.minimum.size:
        raise DimensionMismatchError(norm.minimum.size, trajectory.s)


def apply_normalization(trajectory: Trajectory, norm: Normalization) -> Trajectory:
    """Map each value v to (v - min) / (max - min); values outside the fit range are kept."""
    _check_width(trajectory, norm)
    values = (trajectory.values - norm.minimum[:, None]) / norm.span[:, None]
    return Trajectory(trajectory.unit_id, values, trajectory.sensor_ids)


def invert_normalization(trajectory: Trajectory, norm: Normalization) -> Trajectory:
    """Map normalized values back to sensor units."""
    _check_width(trajectory, norm)
    values = trajectory.values * norm.span[:, None] + norm.minimum[:, None]
    return Trajectory(trajectory.unit_id, values, trajectory.sensor_ids)


def lag_matrix(values, k: int, unit_id=None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lag-embed an (s, t_len) series.

    Returns:
        X of shape (t_len - k, s * k) with rows
        [x1_{t-k} .. x1_{t-1}, ..., xs_{t-k} .. xs_{t-1}],
        D of shape (t_len - k, s) with the values at t,
        and the 1-based cycle t of each row (k + 1 .. t_len)
    """
    if k < 1:
        raise ConfigurationError("k", {"reason": "must be >= 1", "value": k})
    values = np.atleast_2d(np.asarray(values, dtype=float))
    s, t_len = values.shape
    if t_len <= k:
        raise TrajectoryTooShortError(unit_id, t_len, k)

    # windows[i, j] holds values[i, j : j + k]; the last window has no target
    windows = sliding_window_view(values, k, axis=1)[:, :-1, :]
    X = windows.transpose(1, 0, 2).reshape(t_len - k, s * k)
    D = values[:, k:].T.copy()
    cycles = np.arange(k + 1, t_len + 1)
    return X, D, cycles


def lag_embed(trajectory: Trajectory, k: int) -> List[TrainingPair]:
    """Training pairs (x_t, d_t) for t = k + 1 .. t_len."""
    X, D, cycles = lag_matrix(trajectory.values, k, trajectory.unit_id)
    return [TrainingPair(x=x, d=d, t=int(t)) for x, d, t in zip(X, D, cycles)]
