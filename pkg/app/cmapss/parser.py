"""C-MAPSS benchmark file parsing.

Row layout: unit_id, cycle, op_setting_1..3, sensor_1..21, separated by one or
more spaces. Sensor id i lives in source column i + 5 (1-based).
"""

import io
import logging
import re
from pathlib import Path
from typing import IO, Dict, List, Sequence, Union

import numpy as np
import pandas as pd

from app.common.exceptions import ConfigurationError, ParseError
from app.common.models import NUM_FIELDS, NUM_SENSORS, CmapssRecord, Trajectory

logger = logging.getLogger(__name__)

Source = Union[str, Path, IO[str], IO[bytes]]

DEFAULT_SENSOR_IDS = (2, 8, 11, 13, 15)
COLUMNS = ["unit_id", "cycle", "setting_1", "setting_2", "setting_3"] + [
    f"sensor_{i}" for i in range(1, NUM_SENSORS + 1)
]


def _decode(content: bytes, name: str) -> str:
    try:
        return content.decode("utf-8")
    except UnicodeDecodeError as e:
        line = content[: e.start].count(b"\n") + 1
        raise ParseError(name, line, f"invalid UTF-8 at byte {e.start}") from e


def _read_text(source: Source) -> tuple:
    if isinstance(source, (str, Path)):
        name = str(source)
        text = _decode(Path(source).read_bytes(), name)
        return text.replace("\r\n", "\n").replace("\r", "\n"), name
    name = getattr(source, "name", "<stream>")
    content = source.read()
    if isinstance(content, bytes):
        content = _decode(content, name)
    return content, name


class _LineMap:
    """Maps data-frame row positions back to 1-based source lines (blank lines are skipped)."""

    def __init__(self, text: str):
        self.lines = [number for number, line in enumerate(text.splitlines(), 1) if line.strip()]

    def __call__(self, row: int) -> int:
        return self.lines[row]


def _read_frame(text: str, name: str) -> pd.DataFrame:
    try:
        return pd.read_csv(io.StringIO(text), sep=r"\s+", header=None, dtype=str)
    except pd.errors.EmptyDataError:
        return pd.DataFrame()
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        line = int(match.group(1)) if match else None
        raise ParseError(name, line, "wrong column count") from e


def _first_bad_row(mask: pd.Series) -> int:
    return int(np.flatnonzero(mask.to_numpy())[0])


def _to_numeric(frame: pd.DataFrame, name: str, line_of: _LineMap) -> pd.DataFrame:
    bad = frame.apply(pd.to_numeric, errors="coerce").isna() & frame.notna()
    if bad.to_numpy().any():
        row = _first_bad_row(bad.any(axis=1))
        column = int(np.flatnonzero(bad.iloc[row].to_numpy())[0])
        raise ParseError(name, line_of(row), f"non-numeric token {frame.iat[row, column]!r}")
    # float() conversion keeps every decimal token bit-exact
    return frame.astype(float)


def parse_cmapss(source: Source) -> List[CmapssRecord]:
    """Parse a train/test file into records ordered by (unit_id, cycle)."""
    text, name = _read_text(source)
    line_of = _LineMap(text)
    frame = _read_frame(text, name)
    if frame.empty:
        return []

    field_counts = frame.notna().sum(axis=1)
    wrong_width = field_counts != NUM_FIELDS
    if wrong_width.any():
        row = _first_bad_row(wrong_width)
        raise ParseError(
            name,
            line_of(row),
            f"expected {NUM_FIELDS} fields, found {int(field_counts.iloc[row])}",
        )

    numeric = _to_numeric(frame, name, line_of)
    numeric.columns = COLUMNS

    ids = numeric[["unit_id", "cycle"]]
    not_integral = ((ids % 1 != 0) | (ids < 1)).any(axis=1)
    if not_integral.any():
        row = _first_bad_row(not_integral)
        raise ParseError(name, line_of(row), "unit_id and cycle must be positive integers")
    numeric["unit_id"] = numeric["unit_id"].astype(np.int64)
    numeric["cycle"] = numeric["cycle"].astype(np.int64)

    expected = numeric.groupby("unit_id", sort=False).cumcount() + 1
    gap = numeric["cycle"] != expected
    if gap.any():
        row = _first_bad_row(gap)
        raise ParseError(
            name,
            line_of(row),
            f"non-consecutive cycle {numeric['cycle'].iloc[row]} for unit "
            f"{numeric['unit_id'].iloc[row]} (expected {expected.iloc[row]})",
        )

    numeric = numeric.sort_values(["unit_id", "cycle"], kind="stable")
    values = numeric.to_numpy(dtype=float)
    records = [
        CmapssRecord(
            unit_id=int(row[0]),
            cycle=int(row[1]),
            op_settings=tuple(float(v) for v in row[2:5]),
            sensors=tuple(float(v) for v in row[5:]),
        )
        for row in values
    ]
    logger.debug(
        "Parsed %d rows (%d units) from %s", len(records), numeric["unit_id"].nunique(), name
    )
    return records


def serialize_cmapss(records: Sequence[CmapssRecord]) -> str:
    """Write records back in benchmark row format (parse_cmapss inverts this exactly)."""
    if not records:
        return ""
    frame = pd.DataFrame([r.to_row() for r in records], columns=COLUMNS)
    frame["unit_id"] = frame["unit_id"].astype(np.int64)
    frame["cycle"] = frame["cycle"].astype(np.int64)
    return frame.to_csv(sep=" ", header=False, index=False, lineterminator="\n")


def parse_rul_file(source: Source) -> List[int]:
    """Parse a ground-truth RUL file: one nonnegative integer per line, in unit order."""
    text, name = _read_text(source)
    line_of = _LineMap(text)
    frame = _read_frame(text, name)
    if frame.empty:
        return []
    if frame.shape[1] != 1:
        row = _first_bad_row(frame.notna().sum(axis=1) != 1)
        raise ParseError(name, line_of(row), "expected one integer per line")

    tokens = frame.iloc[:, 0]
    not_integer = ~tokens.str.fullmatch(r"\+?\d+")
    if not_integer.any():
        row = _first_bad_row(not_integer)
        raise ParseError(name, line_of(row), f"not a nonnegative integer: {tokens.iloc[row]!r}")
    return [int(v) for v in tokens]


def select_sensors(
    records: Sequence[CmapssRecord], sensor_ids: Sequence[int] = DEFAULT_SENSOR_IDS
) -> List[Trajectory]:
    """One Trajectory per unit with rows in the order of sensor_ids (1-based sensor ids)."""
    unknown = [i for i in sensor_ids if not 1 <= int(i) <= NUM_SENSORS]
    if unknown or not sensor_ids:
        raise ConfigurationError(
            "sensor_ids", {"reason": f"unknown sensor ids {unknown}", "valid": [1, NUM_SENSORS]}
        )
    positions = [int(i) - 1 for i in sensor_ids]

    by_unit: Dict[int, List[CmapssRecord]] = {}
    for record in records:
        by_unit.setdefault(record.unit_id, []).append(record)

    trajectories = []
    for unit_id in sorted(by_unit):
        rows = sorted(by_unit[unit_id], key=lambda r: r.cycle)
        sensors = np.array([r.sensors for r in rows], dtype=float)
        trajectories.append(
            Trajectory(
                unit_id=unit_id,
                values=sensors[:, positions].T,
                sensor_ids=tuple(int(i) for i in sensor_ids),
            )
        )
    return trajectories


def load_fleet(source: Source, sensor_ids: Sequence[int] = DEFAULT_SENSOR_IDS) -> List[Trajectory]:
    """parse_cmapss followed by select_sensors."""
    return select_sensors(parse_cmapss(source), sensor_ids)
