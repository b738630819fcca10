"""Logging setup shared by the qkrul entry point and the tests."""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from app.common.exceptions import ConfigurationError
from app.config.settings import get_settings

LevelLike = Union[str, int, None]

# Third-party loggers kept at WARNING
NOISY_LOGGERS = ("matplotlib", "numexpr", "fire")

MAX_LOG_BYTES = 10 * 1024 * 1024
LOG_BACKUPS = 5


def resolve_level(level: LevelLike, default: int = logging.INFO) -> int:
    """Numeric logging level for a name such as "debug" or an int."""
    if level is None or level == "":
        return default
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ConfigurationError("log_level", {"reason": f"unknown level {level!r}"})
    return value


class LoggingConfig:
    """Root logger configuration: one console handler plus an optional log file."""

    DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    DEFAULT_LEVEL = logging.INFO

    @staticmethod
    def _console_handler(rich_console: bool, formatter: logging.Formatter) -> logging.Handler:
        # both handlers write to stderr; stdout carries tables and state paths
        if rich_console:
            handler: logging.Handler = RichHandler(
                console=Console(stderr=True), show_path=False, rich_tracebacks=True
            )
            handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))
            return handler
        handler = logging.StreamHandler()
        handler.setFormatter(formatter)
        return handler

    @staticmethod
    def setup(
        level: LevelLike = None,
        log_file: Optional[str] = None,
        format_string: Optional[str] = None,
        enable_rotation: bool = True,
        rich_console: bool = False,
    ) -> None:
        """Replace the root handlers.

        Args:
            level: Level name or number (INFO when None)
            log_file: Also write to this file; parent directories are created
            format_string: Record format for the plain console and the file
            enable_rotation: Rotate the log file at MAX_LOG_BYTES
            rich_console: Render console records with rich instead of plain text
        """
        log_level = resolve_level(level, LoggingConfig.DEFAULT_LEVEL)
        formatter = logging.Formatter(format_string or LoggingConfig.DEFAULT_FORMAT)

        root_logger = logging.getLogger()
        root_logger.setLevel(log_level)
        for handler in list(root_logger.handlers):
            root_logger.removeHandler(handler)
        root_logger.addHandler(LoggingConfig._console_handler(rich_console, formatter))

        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(exist_ok=True, parents=True)
            if enable_rotation:
                file_handler: logging.Handler = logging.handlers.RotatingFileHandler(
                    log_path, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS, encoding="utf-8"
                )
            else:
                file_handler = logging.FileHandler(log_path, encoding="utf-8")
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

    @staticmethod
    def setup_from_env() -> None:
        """Configure from the validated QKRUL_* settings; rich output on a terminal."""
        settings = get_settings()
        LoggingConfig.setup(
            level=settings.log_level,
            log_file=settings.log_file,
            rich_console=sys.stderr.isatty(),
        )

    @staticmethod
    def quiet_third_party(level: int = logging.WARNING) -> None:
        """Raise the level of the loggers in NOISY_LOGGERS."""
        for name in NOISY_LOGGERS:
            logging.getLogger(name).setLevel(level)
