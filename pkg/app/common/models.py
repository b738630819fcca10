"""Common data models shared across the toolkit."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.common.exceptions import AlignmentError, ConfigurationError

NUM_OP_SETTINGS = 3
NUM_SENSORS = 21
NUM_FIELDS = 2 + NUM_OP_SETTINGS + NUM_SENSORS


@dataclass(frozen=True)
class CmapssRecord:
    """One row of a C-MAPSS file: unit, cycle, 3 operating settings, 21 sensors."""

    unit_id: int
    cycle: int
    op_settings: Tuple[float, ...]
    sensors: Tuple[float, ...]

    def to_row(self) -> List[float]:
        """Return the 26 source fields in file order."""
        return [self.unit_id, self.cycle, *self.op_settings, *self.sensors]


@dataclass
class Trajectory:
    """Selected-sensor signals of one engine, shape (s, t_len), columns in cycle order."""

    unit_id: int
    values: np.ndarray
    sensor_ids: Tuple[int, ...] = ()

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))

    @property
    def s(self) -> int:
        """Number of sensors (rows)."""
        return int(self.values.shape[0])

    @property
    def t_len(self) -> int:
        """Length in cycles (columns)."""
        return int(self.values.shape[1])


@dataclass
class TrainingPair:
    """Lagged input x (sensor-major, dimension s*k), target d (dimension s) at cycle t."""

    x: np.ndarray
    d: np.ndarray
    t: int


@dataclass
class Normalization:
    """Per-sensor min/max over a whole training fleet."""

    minimum: np.ndarray
    maximum: np.ndarray
    sensor_ids: Tuple[int, ...] = ()

    def __post_init__(self):
        self.minimum = np.asarray(self.minimum, dtype=float).reshape(-1)
        self.maximum = np.asarray(self.maximum, dtype=float).reshape(-1)
        if self.minimum.shape != self.maximum.shape:
            raise ConfigurationError(
                "normalization", {"reason": "min and max have different lengths"}
            )
        constant = [i for i in range(self.minimum.size) if not self.maximum[i] > self.minimum[i]]
        if constant:
            names = [self.sensor_ids[i] if self.sensor_ids else i + 1 for i in constant]
            raise ConfigurationError(
                "sensor_ids",
                {
                    "reason": f"constant sensors {names} must be excluded from the subset",
                    "constant_sensors": names,
                },
            )

    @property
    def span(self) -> np.ndarray:
        """max - min for each sensor."""
        return self.maximum - self.minimum

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "min": self.minimum.tolist(),
            "max": self.maximum.tolist(),
            "sensor_ids": list(self.sensor_ids),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Normalization":
        """Build from the dictionary produced by to_dict."""
        return cls(
            minimum=np.asarray(data["min"], dtype=float),
            maximum=np.asarray(data["max"], dtype=float),
            sensor_ids=tuple(int(i) for i in data.get("sensor_ids", ())),
        )


@dataclass
class RulEstimate:
    """Remaining useful life estimate for one test engine."""

    engine_id: int
    t_c: int
    rul: int
    selected_ids: List[int] = field(default_factory=list)
    t_f_per_predictor: List[Tuple[int, Optional[int]]] = field(default_factory=list)
    censored: bool = False
    rul_true: Optional[int] = None

    @property
    def t_f(self) -> int:
        """Aggregated failure time."""
        return self.t_c + self.rul

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "engine_id": self.engine_id,
            "t_c": self.t_c,
            "rul": self.rul,
            "selected_ids": list(self.selected_ids),
            "t_f_per_predictor": [[pid, t_f] for pid, t_f in self.t_f_per_predictor],
            "censored": self.censored,
            "rul_true": self.rul_true,
        }


@dataclass(frozen=True)
class ErrorRecord:
    """Per-engine RUL error; d < 0 is early, d > 0 is late."""

    engine_id: int
    rul_true: int
    rul_est: int

    @property
    def d(self) -> int:
        """Signed error estimated - true."""
        return self.rul_est - self.rul_true

    @classmethod
    def from_estimates(
        cls, estimates: Sequence[RulEstimate], truth: Dict[int, int]
    ) -> List["ErrorRecord"]:
        """Pair estimates with ground truth by engine id (ids must match exactly)."""
        result_ids = {e.engine_id for e in estimates}
        missing_truth = result_ids - set(truth)
        missing_results = set(truth) - result_ids
        if missing_truth or missing_results:
            raise AlignmentError(missing_truth, missing_results)
        return [
            cls(engine_id=e.engine_id, rul_true=int(truth[e.engine_id]), rul_est=int(e.rul))
            for e in sorted(estimates, key=lambda e: e.engine_id)
        ]


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


@dataclass
class MetricsReport:
    """Evaluation suite over a fleet of RUL estimates."""

    count: int
    mse: float
    mae: float
    mape_percent: float
    score: float
    accuracy_rate: float
    r2: float
    in_time: int
    early: int
    late: int
    error_span: Tuple[int, int]
    histogram: List[Tuple[int, int]]
    window_lo: int = -13
    window_hi: int = 10

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization (undefined values become null)."""
        return {
            "count": self.count,
            "mse": self.mse,
            "mae": self.mae,
            "mape_percent": self.mape_percent,
            "score": self.score,
            "accuracy_rate": self.accuracy_rate,
            "r2": _finite_or_none(self.r2),
            "in_time": self.in_time,
            "early": self.early,
            "late": self.late,
            "error_span": [self.error_span[0], self.error_span[1]],
            "histogram": [[lower, count] for lower, count in self.histogram],
            "window": [self.window_lo, self.window_hi],
        }
