"""Tests for the RUL evaluation suite."""

import math
import random

import numpy as np
import pytest

from app.common.exceptions import MetricsError
from app.common.models import ErrorRecord
from app.metrics.scoring import compute_metrics, error_histogram, score_terms
from app.prognostics.results import read_results


def _records(errors, rul_true=100):
    truths = rul_true if isinstance(rul_true, (list, tuple)) else [rul_true] * len(errors)
    return [
        ErrorRecord(engine_id=i + 1, rul_true=t, rul_est=t + d)
        for i, (d, t) in enumerate(zip(errors, truths))
    ]


# 100-engine fleet: 78 in time, 16 early, 6 late, span [-53, 43], MSE 153.7, MAE 7.34,
# MAPE 9.95 %, score 351.6, R2 0.911
REFERENCE_ERRORS = (
    43, 40, 39, 33, 30, 24, -53, -14, -15, -20, -14, -17, -14, -15, -15, -20, -16, -19, -14, -15,
    -16, -16, -1, -3, -2, 2, -2, 3, -2, 0, -1, 1, 4, -7, 1, -2, -2, 6, 8, -2,
    4, 2, 4, 1, 2, -4, -5, -2, -6, 8, 1, -6, -3, -1, -3, -8, -3, 4, 10, 9,
    -3, 1, 0, 6, 2, -1, -1, -4, 0, -2, 0, 1, 4, -4, -2, 4, -1, 5, -6, 6,
    5, 8, 0, 3, -1, 0, -1, -2, -1, 4, -2, -3, -2, 1, 1, 1, 1, 4, -4, 0,
)
REFERENCE_TRUTH = (
    55, 76, 138, 94, 132, 50, 77, 140, 131, 75, 89, 102, 71, 74, 145, 46, 108, 64, 139, 47,
    128, 66, 8, 117, 116, 43, 144, 143, 106, 142, 120, 11, 139, 54, 29, 127, 29, 144, 80, 108,
    65, 65, 43, 53, 85, 74, 123, 144, 63, 138, 139, 28, 142, 115, 84, 106, 38, 34, 137, 44,
    66, 77, 51, 43, 36, 51, 41, 105, 125, 134, 98, 26, 70, 131, 67, 141, 8, 68, 47, 105,
    42, 144, 12, 110, 31, 102, 145, 98, 135, 65, 38, 98, 134, 26, 138, 43, 145, 73, 145, 66,
)


class TestScoreTerms:
    """Tests for score_terms."""

    def test_window_edges_cost_e_minus_one(self):
        """d = +10 and d = -13 both cost e - 1."""
        terms = score_terms([10, -13])
        np.testing.assert_allclose(terms, [math.e - 1, math.e - 1], rtol=1e-12)
        assert terms[0] == pytest.approx(1.71828, abs=1e-5)

    def test_zero_is_free(self):
        """An exact estimate costs nothing."""
        assert score_terms([0]).tolist() == [0.0]

    @pytest.mark.parametrize("magnitude", [1, 5, 13, 40])
    def test_late_costs_more_than_early(self, magnitude):
        """Equal magnitudes are penalized harder when late."""
        early, late = score_terms([-magnitude, magnitude])
        assert late > early > 0

    def test_increasing_in_magnitude(self):
        """Larger errors on either side cost more."""
        assert np.all(np.diff(score_terms(np.arange(0, 30))) > 0)
        assert np.all(np.diff(score_terms(-np.arange(0, 30))) > 0)


class TestComputeMetrics:
    """Tests for compute_metrics."""

    def test_perfect_prediction(self):
        """All d = 0 gives zero errors, full accuracy and R2 of 1."""
        report = compute_metrics(_records([0, 0, 0], rul_true=[10, 50, 90]))
        assert (report.mse, report.mae, report.mape_percent, report.score) == (0.0, 0.0, 0.0, 0.0)
        assert report.accuracy_rate == 1.0
        assert report.r2 == 1.0

    def test_classification(self):
        """d in {-20, 0, 5} with window [-13, 10] has two in time and one early."""
        report = compute_metrics(_records([-20, 0, 5]))
        assert (report.in_time, report.early, report.late) == (2, 1, 0)
        assert report.accuracy_rate == pytest.approx(2 / 3)

    def test_window_bounds_are_inclusive(self):
        """Errors exactly on the window edges are in time."""
        report = compute_metrics(_records([-13, 10, -14, 11]))
        assert (report.in_time, report.early, report.late) == (2, 1, 1)

    def test_custom_window(self):
        """The window is configurable."""
        report = compute_metrics(_records([-11, 12]), window_lo=-10, window_hi=13)
        assert (report.in_time, report.early, report.late) == (1, 1, 0)
        assert (report.window_lo, report.window_hi) == (-10, 13)

    def test_values(self):
        """mse, mae, mape and score follow their definitions."""
        report = compute_metrics(_records([-4, 2], rul_true=[20, 40]))
        assert report.mse == pytest.approx(10.0)
        assert report.mae == pytest.approx(3.0)
        assert report.mape_percent == pytest.approx(100 * (4 / 20 + 2 / 40) / 2)
        assert report.score == pytest.approx(math.expm1(4 / 13) + math.expm1(2 / 10))
        assert report.r2 == pytest.approx(1 - 20 / 200)

    def test_benchmark_like_fleet(self, tmp_path):
        """A 100-engine results file reproduces every figure of the reference fleet."""
        header = "engine_id,t_c,rul_estimated,rul_true,censored,selected_ids\n"
        rows = [
            f"{i + 1},{30 + i},{t + d},,false,1;2\n"
            for i, (d, t) in enumerate(zip(REFERENCE_ERRORS, REFERENCE_TRUTH))
        ]
        path = tmp_path / "results.csv"
        path.write_text(header + "".join(rows), encoding="utf-8")
        truth = {i + 1: t for i, t in enumerate(REFERENCE_TRUTH)}

        records = ErrorRecord.from_estimates(read_results(path), truth)
        report = compute_metrics(records)

        assert [r.d for r in records] == list(REFERENCE_ERRORS)
        assert report.count == 100
        assert report.mse == pytest.approx(153.7, abs=0.05)
        assert report.mae == pytest.approx(7.34, abs=0.005)
        assert report.mape_percent == pytest.approx(9.95, abs=0.005)
        assert report.score == pytest.approx(351.6, abs=0.05)
        assert report.r2 == pytest.approx(0.911, abs=0.0005)
        assert report.accuracy_rate == pytest.approx(0.78)
        assert (report.in_time, report.early, report.late) == (78, 16, 6)
        assert report.error_span == (-53, 43)
        assert (report.window_lo, report.window_hi) == (-13, 10)
        assert len(report.histogram) == 43 + 53 + 1
        assert report.histogram[0] == (-53, 1)
        assert report.histogram[-1] == (43, 1)
        assert sum(count for _, count in report.histogram) == 100

    def test_permutation_invariance(self):
        """Record order does not change any metric."""
        pairs = list(zip(REFERENCE_ERRORS, REFERENCE_TRUTH))
        random.Random(4).shuffle(pairs)
        shuffled = compute_metrics(_records([d for d, _ in pairs], [t for _, t in pairs]))
        expected = compute_metrics(_records(REFERENCE_ERRORS, list(REFERENCE_TRUTH)))
        assert (shuffled.in_time, shuffled.early, shuffled.late) == (78, 16, 6)
        assert shuffled.histogram == expected.histogram
        assert shuffled.error_span == expected.error_span
        for name in ("mse", "mae", "mape_percent", "score", "r2"):
            assert getattr(shuffled, name) == pytest.approx(getattr(expected, name), rel=1e-12)

    def test_undefined_r2(self):
        """Constant ground truth with a nonzero error leaves R2 undefined (null in JSON)."""
        report = compute_metrics(_records([0, 3], rul_true=[20, 20]))
        assert math.isnan(report.r2)
        assert report.to_dict()["r2"] is None

    def test_constant_truth_exact(self):
        """Constant ground truth with exact estimates gives R2 of 1."""
        assert compute_metrics(_records([0, 0], rul_true=[20, 20])).r2 == 1.0

    def test_empty(self):
        """Nothing to evaluate."""
        with pytest.raises(MetricsError):
            compute_metrics([])

    def test_zero_truth(self):
        """MAPE needs positive ground truth."""
        with pytest.raises(MetricsError) as excinfo:
            compute_metrics([ErrorRecord(engine_id=3, rul_true=0, rul_est=5)])
        assert excinfo.value.details["engine_ids"] == [3]

    @pytest.mark.parametrize("window", [(0, 10), (-13, 0), (5, 10)])
    def test_invalid_window(self, window):
        """The window must straddle zero."""
        with pytest.raises(MetricsError):
            compute_metrics(_records([0]), *window)

    def test_document(self):
        """The report serializes every field."""
        document = compute_metrics(_records([-20, 0, 5])).to_dict()
        assert document["error_span"] == [-20, 5]
        assert document["window"] == [-13, 10]
        assert document["histogram"][0] == [-20, 1]
        assert set(document) >= {"mse", "mae", "mape_percent", "score", "accuracy_rate", "r2"}


class TestErrorHistogram:
    """Tests for error_histogram."""

    def test_counts(self):
        """d in {0, 0, 1} gives two bins."""
        assert error_histogram(_records([0, 0, 1])) == [(0, 2), (1, 1)]

    def test_single_record(self):
        """One record, one bin."""
        assert error_histogram(_records([-7])) == [(-7, 1)]

    def test_empty_bins_are_kept(self):
        """Bins between the extremes appear with zero counts."""
        assert error_histogram(_records([-2, 1])) == [(-2, 1), (-1, 0), (0, 0), (1, 1)]

    def test_empty(self):
        """An empty record list has no histogram."""
        with pytest.raises(MetricsError):
            error_histogram([])
