"""Base classes for command pattern implementation."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from app.config.settings import RunConfig


@dataclass
class CommandContext:
    """Context object containing all command parameters."""

    config: RunConfig = field(default_factory=RunConfig)
    # values given explicitly on the command line, keyed by RunConfig field
    explicit: Dict[str, Any] = field(default_factory=dict)
    verbose: bool = False

    # train / predict
    train_file: Optional[str] = None
    test_file: Optional[str] = None
    model_dir: str = "models"
    out_csv: str = "results.csv"
    rul_file: Optional[str] = None
    forecast_dir: Optional[str] = None

    # evaluate
    results_csv: Optional[str] = None
    output_dir: str = "metrics"

    # inspect
    model_file: Optional[str] = None
    trajectory_file: Optional[str] = None
    unit: Optional[int] = None


class Command(ABC):
    """Abstract base class for commands."""

    @abstractmethod
    def execute(self, context: CommandContext) -> None:
        """Execute the command with given context."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the command name."""

    @property
    @abstractmethod
    def description(self) -> str:
        """Return the command description."""
