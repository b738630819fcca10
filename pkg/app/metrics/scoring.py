"""RUL evaluation suite over per-engine errors d = estimated - true."""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from app.common.exceptions import MetricsError
from app.common.models import ErrorRecord, MetricsReport

logger = logging.getLogger(__name__)

EARLY_SCALE = 13.0
LATE_SCALE = 10.0
DEFAULT_WINDOW = (-13, 10)


def _errors(records: Sequence[ErrorRecord]) -> np.ndarray:
    if not records:
        raise MetricsError("no records to evaluate")
    return np.array([r.d for r in records], dtype=np.int64)


def score_terms(d) -> np.ndarray:
    """Asymmetric exponential penalty of each error: exp(-d/13) - 1 early, exp(d/10) - 1 late."""
    d = np.asarray(d, dtype=float)
    return np.where(d < 0, np.expm1(-d / EARLY_SCALE), np.expm1(d / LATE_SCALE))


def error_histogram(records: Sequence[ErrorRecord]) -> List[Tuple[int, int]]:
    """Unit-width integer bins covering [min d, max d], empty bins included."""
    d = _errors(records)
    lower = int(d.min())
    counts = np.bincount(d - lower)
    return [(lower + offset, int(count)) for offset, count in enumerate(counts)]


def _r_squared(d: np.ndarray, rul_true: np.ndarray) -> float:
    residual = float(np.sum(d.astype(float) ** 2))
    total = float(np.sum((rul_true - rul_true.mean()) ** 2))
    if total == 0.0:
        # undefined unless every estimate is exact
        return 1.0 if residual == 0.0 else float("nan")
    return 1.0 - residual / total


def compute_metrics(
    records: Sequence[ErrorRecord],
    window_lo: int = DEFAULT_WINDOW[0],
    window_hi: int = DEFAULT_WINDOW[1],
) -> MetricsReport:
    """MSE, MAE, MAPE, score, accuracy rate with window classification, R2 and histogram."""
    if not window_lo < 0 < window_hi:
        raise MetricsError(
            f"window must satisfy lo < 0 < hi, got [{window_lo}, {window_hi}]",
            {"window_lo": window_lo, "window_hi": window_hi},
        )
    d = _errors(records)
    rul_true = np.array([r.rul_true for r in records], dtype=float)
    if np.any(rul_true <= 0):
        bad = sorted(r.engine_id for r in records if r.rul_true <= 0)
        raise MetricsError("rul_true must be positive for MAPE", {"engine_ids": bad})

    magnitude = np.abs(d).astype(float)
    early = int(np.count_nonzero(d < window_lo))
    late = int(np.count_nonzero(d > window_hi))
    in_time = d.size - early - late

    report = MetricsReport(
        count=int(d.size),
        mse=float(np.mean(magnitude**2)),
        mae=float(np.mean(magnitude)),
        mape_percent=float(100.0 * np.mean(magnitude / rul_true)),
        score=float(np.sum(score_terms(d))),
        accuracy_rate=in_time / d.size,
        r2=_r_squared(d, rul_true),
        in_time=in_time,
        early=early,
        late=late,
        error_span=(int(d.min()), int(d.max())),
        histogram=error_histogram(records),
        window_lo=int(window_lo),
        window_hi=int(window_hi),
    )
    logger.debug(
        "Metrics over %d engines: mse=%.3f score=%.3f accuracy=%.3f",
        report.count,
        report.mse,
        report.score,
        report.accuracy_rate,
    )
    return report
