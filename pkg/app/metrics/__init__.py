"""Prognostic evaluation metrics."""

from app.metrics.scoring import compute_metrics, error_histogram, score_terms

__all__ = ["compute_metrics", "error_histogram", "score_terms"]
