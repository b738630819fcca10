"""Metrics report rendering: JSON document, aligned text table and histogram CSV."""

import io
import json
import logging
import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd
from rich import box
from rich.console import Console
from rich.table import Table

from app.common.models import MetricsReport

logger = logging.getLogger(__name__)

TABLE_WIDTH = 80


class ReportRenderer(ABC):
    """Renders a metrics report to text."""

    filename: str = ""

    @abstractmethod
    def render(self, report: MetricsReport) -> str:
        """Render report content."""


class JsonRenderer(ReportRenderer):
    """All report fields as sorted, indented JSON."""

    filename = "metrics.json"

    def render(self, report: MetricsReport) -> str:
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def _real(value: float, digits: int = 4) -> str:
    return "n/a" if not math.isfinite(value) else f"{value:.{digits}f}"


class TableRenderer(ReportRenderer):
    """Two-column plain-text table of the headline metrics."""

    filename = "metrics.txt"

    def build_table(self, report: MetricsReport) -> Table:
        """Rich table with one row per metric."""
        table = Table(title="RUL Evaluation", box=box.SIMPLE, show_header=True)
        table.add_column("Metric")
        table.add_column("Value", justify="right")

        table.add_row("Engines", str(report.count))
        table.add_row("MSE", _real(report.mse))
        table.add_row("MAE", _real(report.mae))
        table.add_row("MAPE (%)", _real(report.mape_percent))
        table.add_row("Score", _real(report.score))
        table.add_row("Accuracy rate", _real(report.accuracy_rate))
        table.add_row("R2", _real(report.r2))
        table.add_row(f"In time [{report.window_lo}, {report.window_hi}]", str(report.in_time))
        table.add_row("Early (FN)", str(report.early))
        table.add_row("Late (FP)", str(report.late))
        table.add_row("Error span", f"[{report.error_span[0]}, {report.error_span[1]}]")
        return table

    def render(self, report: MetricsReport) -> str:
        buffer = io.StringIO()
        console = Console(
            file=buffer, width=TABLE_WIDTH, color_system=None, force_terminal=False, highlight=False
        )
        console.print(self.build_table(report))
        return buffer.getvalue()


class HistogramCsvRenderer(ReportRenderer):
    """bin,count CSV of the error histogram."""

    filename = "histogram.csv"

    def render(self, report: MetricsReport) -> str:
        frame = pd.DataFrame(report.histogram, columns=["bin", "count"])
        return frame.to_csv(index=False, lineterminator="\n")


def render_metrics_json(report: MetricsReport) -> str:
    """JSON document with every MetricsReport field."""
    return JsonRenderer().render(report)


def render_metrics_table(report: MetricsReport) -> str:
    """Aligned plain-text table."""
    return TableRenderer().render(report)


def render_histogram_csv(report: MetricsReport) -> str:
    """Two-column histogram CSV."""
    return HistogramCsvRenderer().render(report)


class MetricsReporter:
    """Writes every metrics artifact into one directory."""

    def __init__(self, renderers: Optional[List[ReportRenderer]] = None):
        self.renderers = renderers or [JsonRenderer(), TableRenderer(), HistogramCsvRenderer()]

    def write(self, report: MetricsReport, output_dir: Union[str, Path]) -> Dict[str, Path]:
        """Render and save each artifact; returns file paths keyed by file name."""
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        written = {}
        for renderer in self.renderers:
            path = output_dir / renderer.filename
            path.write_text(renderer.render(report), encoding="utf-8")
            written[renderer.filename] = path
            logger.info("Wrote %s", path)
        return written
