#!/usr/bin/env python3
"""
Custom exceptions for the application.
"""

from typing import Any, Iterable, Optional


class PrognosticsException(Exception):
    """Base exception for all toolkit-specific errors."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(PrognosticsException):
    """Raised when configuration is invalid."""

    def __init__(self, config_item: str, details: Optional[dict] = None):
        reason = (details or {}).get("reason")
        message = f"Configuration error: invalid value for {config_item}"
        if reason:
            message = f"{message} ({reason})"
        super().__init__(message, details)
        self.config_item = config_item


class DimensionMismatchError(PrognosticsException):
    """Raised when a vector does not have the expected dimension."""

    def __init__(self, expected: int, got: int, details: Optional[dict] = None):
        message = f"Dimension mismatch: expected {expected}, got {got}"
        super().__init__(message, details)
        self.expected = expected
        self.got = got


class UntrainedPredictorError(PrognosticsException):
    """Raised when an empty model is asked to predict or assign a state."""

    def __init__(self, engine_id: Optional[int] = None, details: Optional[dict] = None):
        message = "untrained predictor"
        if engine_id is not None:
            message = f"untrained predictor (engine {engine_id})"
        super().__init__(message, details)
        self.engine_id = engine_id


class IllConditionedError(PrognosticsException):
    """Raised when the regularized kernel system cannot be solved reliably."""

    def __init__(self, details: Optional[dict] = None):
        message = "Ill-conditioned system: increase alpha above 0"
        super().__init__(message, details)


class ParseError(PrognosticsException):
    """Raised when an input file cannot be parsed."""

    def __init__(
        self, source: str, line: Optional[int], reason: str, details: Optional[dict] = None
    ):
        location = f"{source}:{line}" if line is not None else source
        message = f"Parse error at {location}: {reason}"
        super().__init__(message, details)
        self.source = source
        self.line = line
        self.reason = reason


class TrajectoryTooShortError(PrognosticsException):
    """Raised when a trajectory cannot form a single lag vector."""

    def __init__(self, unit_id: Optional[int], length: int, k: int):
        message = f"trajectory too short: unit {unit_id} has {length} cycles, needs more than {k}"
        super().__init__(message, {"unit_id": unit_id, "length": length, "k": k})
        self.unit_id = unit_id
        self.length = length
        self.k = k


class ModelFormatError(PrognosticsException):
    """Raised when a persisted model document is corrupted or has the wrong version."""

    def __init__(self, source: str, reason: str, details: Optional[dict] = None):
        message = f"Invalid model document {source}: {reason}"
        super().__init__(message, details)
        self.source = source
        self.reason = reason


class AlignmentError(PrognosticsException):
    """Raised when estimates and ground truth do not cover the same engines."""

    def __init__(self, missing_truth: Iterable[Any], missing_results: Iterable[Any] = ()):
        self.missing_truth = sorted(missing_truth)
        self.missing_results = sorted(missing_results)
        parts = []
        if self.missing_truth:
            parts.append(f"no ground truth for engine ids {self.missing_truth}")
        if self.missing_results:
            parts.append(f"no estimate for engine ids {self.missing_results}")
        message = "Alignment error: " + "; ".join(parts)
        super().__init__(
            message,
            {"missing_truth": self.missing_truth, "missing_results": self.missing_results},
        )


class MetricsError(PrognosticsException):
    """Raised when evaluation metrics cannot be computed."""

    def __init__(self, reason: str, details: Optional[dict] = None):
        super().__init__(f"Metrics error: {reason}", details)
        self.reason = reason
