"""Results and forecast-trace CSV files."""

import logging
import re
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from app.cmapss.preprocessing import invert_normalization
from app.common.exceptions import ParseError
from app.common.models import Normalization, RulEstimate, Trajectory
from app.prognostics.forecast import ForecastResult

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RESULT_COLUMNS = ["engine_id", "t_c", "rul_estimated", "rul_true", "censored", "selected_ids"]
_INTEGER = re.compile(r"-?\d+")


def _format_row(estimate: RulEstimate) -> List[str]:
    return [
        str(estimate.engine_id),
        str(estimate.t_c),
        str(estimate.rul),
        "" if estimate.rul_true is None else str(estimate.rul_true),
        "true" if estimate.censored else "false",
        ";".join(str(i) for i in estimate.selected_ids),
    ]


def results_to_csv(estimates: Sequence[RulEstimate]) -> str:
    """Render estimates (sorted by engine id) as results CSV text."""
    rows = [_format_row(e) for e in sorted(estimates, key=lambda e: e.engine_id)]
    frame = pd.DataFrame(rows, columns=RESULT_COLUMNS, dtype=str)
    return frame.to_csv(index=False, lineterminator="\n")


def write_results(estimates: Sequence[RulEstimate], path: PathLike) -> Path:
    """Write the results CSV and return its path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(results_to_csv(estimates), encoding="utf-8")
    logger.info("Wrote %d estimates to %s", len(estimates), path)
    return path


def _parse_int(value: str, column: str, source: str, line: int) -> int:
    if not _INTEGER.fullmatch(value):
        raise ParseError(source, line, f"{column} is not an integer: {value!r}")
    return int(value)


def _parse_row(row: pd.Series, source: str, line: int) -> RulEstimate:
    censored = row["censored"].strip().lower()
    if censored not in ("true", "false"):
        raise ParseError(source, line, f"censored must be true or false: {row['censored']!r}")
    rul_true_text = row["rul_true"].strip()
    selected_text = row["selected_ids"].strip()
    selected = [
        _parse_int(token, "selected_ids", source, line)
        for token in selected_text.split(";")
        if selected_text
    ]
    return RulEstimate(
        engine_id=_parse_int(row["engine_id"].strip(), "engine_id", source, line),
        t_c=_parse_int(row["t_c"].strip(), "t_c", source, line),
        rul=_parse_int(row["rul_estimated"].strip(), "rul_estimated", source, line),
        selected_ids=selected,
        censored=censored == "true",
        rul_true=_parse_int(rul_true_text, "rul_true", source, line) if rul_true_text else None,
    )


def read_results(path: PathLike) -> List[RulEstimate]:
    """Read a results CSV written by write_results."""
    source = str(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise ParseError(source, 1, "missing header") from e
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        raise ParseError(source, int(match.group(1)) if match else None, "wrong field count") from e

    if list(frame.columns) != RESULT_COLUMNS:
        raise ParseError(source, 1, f"expected header {','.join(RESULT_COLUMNS)}")
    frame = frame.fillna("")
    # header is line 1
    rows = enumerate(frame.iterrows())
    return [_parse_row(row, source, position + 2) for position, (_, row) in rows]


def forecast_trace_frame(
    result: ForecastResult, test: Trajectory, norm: Optional[Normalization] = None
) -> pd.DataFrame:
    """Observed and predicted signals of one engine in sensor units, one row per cycle."""
    predicted = result.extension
    if norm is not None:
        predicted = invert_normalization(Trajectory(test.unit_id, predicted), norm).values
    t_c = test.t_len
    n_pred = predicted.shape[1]
    names = [f"sensor_{i}" for i in test.sensor_ids]
    if not names:
        names = [f"signal_{i}" for i in range(1, test.s + 1)]

    frame = pd.DataFrame(np.concatenate([test.values, predicted], axis=1).T, columns=names)
    frame.insert(0, "cycle", np.arange(1, t_c + n_pred + 1))
    frame.insert(1, "kind", ["observed"] * t_c + ["predicted"] * n_pred)
    frame.insert(2, "state", pd.array([None] * t_c + list(result.states[:n_pred]), dtype="Int64"))
    return frame


def write_forecast_trace(
    result: ForecastResult,
    test: Trajectory,
    norm: Optional[Normalization],
    path: PathLike,
) -> Path:
    """Write the plot-ready forecast trace CSV of one engine."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = forecast_trace_frame(result, test, norm)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.debug("Wrote forecast trace for unit %d to %s", test.unit_id, path)
    return path
