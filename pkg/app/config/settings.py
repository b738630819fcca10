"""Run configuration: defaults, YAML config files and command-line overrides."""

import logging
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from app.common.exceptions import ConfigurationError
from app.common.models import NUM_SENSORS

logger = logging.getLogger(__name__)

AGGREGATES = ("median", "best")


def parse_sensor_ids(value: Any) -> List[int]:
    """Accept a list/tuple of ids, a single id, or a comma-separated string."""
    if isinstance(value, str):
        tokens = [token.strip() for token in value.split(",") if token.strip()]
    elif isinstance(value, (list, tuple)):
        tokens = list(value)
    else:
        tokens = [value]
    try:
        return [int(token) for token in tokens]
    except (TypeError, ValueError) as e:
        raise ConfigurationError(
            "sensor_ids", {"reason": f"not a list of integers: {value!r}"}
        ) from e


def _as_int(value: Any) -> int:
    """Integer value of an int, an integral float or a numeric string; 2.5 is rejected."""
    if isinstance(value, bool):
        raise TypeError(f"not an integer: {value!r}")
    if isinstance(value, int):
        return value
    number = float(value)
    if not number.is_integer():
        raise ValueError(f"not an integer: {value!r}")
    return int(number)


@dataclass
class RunConfig:
    """Hyperparameters and pipeline options of one run.

    The pipeline is deterministic, so there is no seed.
    """

    k: int = 5
    sigma: float = 0.5
    alpha: float = 0.01
    eps_u: float = 0.3
    sensor_ids: List[int] = field(default_factory=lambda: [2, 8, 11, 13, 15])
    j_select: int = 5
    horizon_cap: int = 500
    aggregate: str = "median"
    window_lo: int = -13
    window_hi: int = 10
    threads: int = 1
    log_level: str = "INFO"

    def validate(self) -> "RunConfig":
        """Raise ConfigurationError for the first out-of-range value."""
        checks = [
            ("k", self.k >= 1, "must be >= 1"),
            ("sigma", self.sigma > 0, "must be > 0"),
            ("alpha", self.alpha >= 0, "must be >= 0"),
            ("eps_u", self.eps_u >= 0, "must be >= 0"),
            ("j_select", self.j_select >= 1, "must be >= 1"),
            ("horizon_cap", self.horizon_cap >= 1, "must be >= 1"),
            ("aggregate", self.aggregate in AGGREGATES, "must be median or best"),
            ("window_lo", self.window_lo < 0, "must be < 0"),
            ("window_hi", self.window_hi > 0, "must be > 0"),
            ("threads", self.threads >= 1, "must be >= 1"),
        ]
        for name, ok, reason in checks:
            if not ok:
                raise ConfigurationError(name, {"reason": reason, "value": getattr(self, name)})

        if not self.sensor_ids:
            raise ConfigurationError("sensor_ids", {"reason": "at least one sensor is required"})
        invalid = [i for i in self.sensor_ids if not 1 <= i <= NUM_SENSORS]
        if invalid:
            raise ConfigurationError(
                "sensor_ids", {"reason": f"ids must be in [1, {NUM_SENSORS}]", "value": invalid}
            )
        if len(set(self.sensor_ids)) != len(self.sensor_ids):
            raise ConfigurationError("sensor_ids", {"reason": "ids must be unique"})
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)

    @classmethod
    def field_names(cls) -> List[str]:
        """Keys accepted in config files."""
        return [f.name for f in fields(cls)]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Build from a flat mapping, coercing types; unknown keys are an error."""
        unknown = sorted(set(data) - set(cls.field_names()))
        if unknown:
            raise ConfigurationError("config", {"reason": f"unknown keys {unknown}"})
        defaults = cls()
        values = {}
        for f in fields(cls):
            if f.name not in data or data[f.name] is None:
                continue
            raw = data[f.name]
            try:
                if f.name == "sensor_ids":
                    values[f.name] = parse_sensor_ids(raw)
                elif isinstance(getattr(defaults, f.name), bool):
                    values[f.name] = bool(raw)
                elif isinstance(getattr(defaults, f.name), int):
                    values[f.name] = _as_int(raw)
                else:
                    values[f.name] = type(getattr(defaults, f.name))(raw)
            except (TypeError, ValueError) as e:
                raise ConfigurationError(f.name, {"reason": f"cannot convert {raw!r}"}) from e
        if "aggregate" in values:
            values["aggregate"] = values["aggregate"].lower()
        return cls(**values)


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a flat YAML (or JSON) mapping."""
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigurationError("config", {"reason": f"cannot read {path}: {e}"}) from e
    except yaml.YAMLError as e:
        raise ConfigurationError("config", {"reason": f"invalid YAML in {path}: {e}"}) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError("config", {"reason": f"{path} must contain a mapping"})
    logger.debug("Loaded config file %s (%d keys)", path, len(data))
    return data


def resolve_run_config(config_file: Optional[Union[str, Path]] = None, **overrides) -> RunConfig:
    """Defaults < config file < explicit overrides (None means not given)."""
    merged: Dict[str, Any] = {}
    if config_file:
        merged.update(load_config_file(config_file))
    merged.update({key: value for key, value in overrides.items() if value is not None})
    return RunConfig.from_dict(merged).validate()


class Settings:
    """Process-level settings read from environment variables."""

    def __init__(self):
        self.log_level = os.getenv("QKRUL_LOG_LEVEL", "INFO").upper()
        self.log_file = os.getenv("QKRUL_LOG_FILE") or None
        self.cmapss_dir = os.getenv("QKRUL_CMAPSS_DIR") or None

    def validate(self) -> None:
        """Check the environment values."""
        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigurationError(
                "QKRUL_LOG_LEVEL", {"reason": "unknown level", "value": self.log_level}
            )
        if self.cmapss_dir and not Path(self.cmapss_dir).is_dir():
            raise ConfigurationError(
                "QKRUL_CMAPSS_DIR", {"reason": "not a directory", "value": self.cmapss_dir}
            )


def get_settings() -> Settings:
    """Validated settings from the current environment."""
    settings = Settings()
    settings.validate()
    return settings
