"""Rendering of evaluation reports."""

from app.reporter.metrics_reporter import (
    HistogramCsvRenderer,
    JsonRenderer,
    MetricsReporter,
    ReportRenderer,
    TableRenderer,
    render_histogram_csv,
    render_metrics_json,
    render_metrics_table,
)

__all__ = [
    "HistogramCsvRenderer",
    "JsonRenderer",
    "MetricsReporter",
    "ReportRenderer",
    "TableRenderer",
    "render_histogram_csv",
    "render_metrics_json",
    "render_metrics_table",
]
