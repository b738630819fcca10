"""Tests for common data models."""

import numpy as np
import pytest

from app.common.exceptions import AlignmentError, ConfigurationError
from app.common.models import (
    CmapssRecord,
    ErrorRecord,
    MetricsReport,
    Normalization,
    RulEstimate,
    Trajectory,
)


class TestCmapssRecord:
    """Tests for CmapssRecord."""

    def test_to_row(self):
        """Fields come back in file order."""
        record = CmapssRecord(1, 2, (0.1, 0.2, 100.0), tuple(float(i) for i in range(21)))
        row = record.to_row()
        assert len(row) == 26
        assert row[:5] == [1, 2, 0.1, 0.2, 100.0]
        assert row[-1] == 20.0


class TestTrajectory:
    """Tests for Trajectory."""

    def test_shape(self):
        """s counts sensors and t_len counts cycles."""
        trajectory = Trajectory(1, [[1, 2, 3], [4, 5, 6]])
        assert (trajectory.s, trajectory.t_len) == (2, 3)
        assert trajectory.values.dtype == float

    def test_one_dimensional_values(self):
        """A flat series is one sensor."""
        assert Trajectory(1, [1.0, 2.0]).values.shape == (1, 2)


class TestNormalization:
    """Tests for Normalization."""

    def test_round_trip(self):
        """to_dict and from_dict preserve bounds and sensor ids."""
        norm = Normalization([0.5, 1.0], [2.0, 3.0], (2, 8))
        restored = Normalization.from_dict(norm.to_dict())
        np.testing.assert_array_equal(restored.minimum, [0.5, 1.0])
        np.testing.assert_array_equal(restored.span, [1.5, 2.0])
        assert restored.sensor_ids == (2, 8)

    def test_constant_sensor(self):
        """max = min is rejected."""
        with pytest.raises(ConfigurationError, match="constant"):
            Normalization([1.0], [1.0])

    def test_length_mismatch(self):
        """Bounds must have equal lengths."""
        with pytest.raises(ConfigurationError):
            Normalization([0.0, 1.0], [2.0])


class TestRulEstimate:
    """Tests for RulEstimate."""

    def test_failure_time(self):
        """t_f = t_c + rul."""
        assert RulEstimate(engine_id=1, t_c=31, rul=112).t_f == 143

    def test_to_dict(self):
        """Censored forecasts serialize as null."""
        estimate = RulEstimate(1, 31, 20, [3, 4], [(3, 51), (4, None)])
        document = estimate.to_dict()
        assert document["t_f_per_predictor"] == [[3, 51], [4, None]]
        assert document["censored"] is False
        assert document["rul_true"] is None


class TestErrorRecord:
    """Tests for ErrorRecord."""

    def test_sign_convention(self):
        """Negative d is early, positive d is late."""
        assert ErrorRecord(1, rul_true=50, rul_est=40).d == -10
        assert ErrorRecord(1, rul_true=50, rul_est=55).d == 5

    def test_from_estimates(self):
        """Estimates are paired with truth by engine id and sorted."""
        estimates = [RulEstimate(2, 30, 12), RulEstimate(1, 20, 5)]
        records = ErrorRecord.from_estimates(estimates, {1: 7, 2: 10})
        assert records == [ErrorRecord(1, 7, 5), ErrorRecord(2, 10, 12)]

    def test_missing_truth(self):
        """An estimate without ground truth is an alignment error."""
        with pytest.raises(AlignmentError) as excinfo:
            ErrorRecord.from_estimates([RulEstimate(1, 20, 5), RulEstimate(3, 20, 5)], {1: 7})
        assert excinfo.value.missing_truth == [3]

    def test_missing_estimate(self):
        """Ground truth without an estimate is an alignment error."""
        with pytest.raises(AlignmentError) as excinfo:
            ErrorRecord.from_estimates([RulEstimate(1, 20, 5)], {1: 7, 2: 9})
        assert excinfo.value.missing_results == [2]


class TestMetricsReport:
    """Tests for MetricsReport."""

    def test_to_dict_nan(self):
        """Non-finite R2 becomes None."""
        report = MetricsReport(
            count=1,
            mse=0.0,
            mae=0.0,
            mape_percent=0.0,
            score=0.0,
            accuracy_rate=1.0,
            r2=float("nan"),
            in_time=1,
            early=0,
            late=0,
            error_span=(0, 0),
            histogram=[(0, 1)],
        )
        assert report.to_dict()["r2"] is None
        assert report.to_dict()["histogram"] == [[0, 1]]
