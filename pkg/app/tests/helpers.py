"""Synthetic degradation trajectories and benchmark-format text for tests."""

from typing import List, Sequence

import numpy as np

from app.common.models import NUM_SENSORS, Trajectory

SENSOR_IDS = (2, 8, 11, 13, 15)


def make_trajectory(
    unit_id: int, t_len: int, s: int = 2, seed: int = 0, sensor_ids: Sequence[int] = ()
) -> Trajectory:
    """Noisy monotone degradation: each sensor drifts quadratically toward end of life."""
    rng = np.random.default_rng(seed)
    life = np.arange(1, t_len + 1) / t_len
    base = rng.uniform(0.0, 1.0, size=(s, 1))
    slopes = np.arange(1, s + 1, dtype=float)[:, None]
    values = base + slopes * life**2 + rng.normal(0.0, 0.01, size=(s, t_len))
    return Trajectory(unit_id=unit_id, values=values, sensor_ids=tuple(sensor_ids))


def cmapss_text(trajectories: Sequence[Trajectory], sensor_ids: Sequence[int] = SENSOR_IDS) -> str:
    """Benchmark-format rows; selected sensors carry the trajectory values, others are filler."""
    lines: List[str] = []
    for trajectory in trajectories:
        for column in range(trajectory.t_len):
            sensors = [100.0 + 0.5 * i for i in range(1, NUM_SENSORS + 1)]
            for row, sensor_id in enumerate(sensor_ids):
                sensors[sensor_id - 1] = float(trajectory.values[row, column])
            fields = [str(trajectory.unit_id), str(column + 1), "0.0007", "-0.0004", "100.0"]
            fields += [repr(v) for v in sensors]
            lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


