"""C-MAPSS benchmark data: parsing, sensor selection, normalization, lag embedding."""

from app.cmapss.parser import (
    DEFAULT_SENSOR_IDS,
    load_fleet,
    parse_cmapss,
    parse_rul_file,
    select_sensors,
    serialize_cmapss,
)
from app.cmapss.preprocessing import (
    apply_normalization,
    fit_normalization,
    invert_normalization,
    lag_embed,
    lag_matrix,
)

__all__ = [
    "DEFAULT_SENSOR_IDS",
    "apply_normalization",
    "fit_normalization",
    "invert_normalization",
    "lag_embed",
    "lag_matrix",
    "load_fleet",
    "parse_cmapss",
    "parse_rul_file",
    "select_sensors",
    "serialize_cmapss",
]
