"""Tests for unified logging configuration."""

import logging
import logging.handlers
import os
import sys
from unittest.mock import patch

import pytest
from rich.logging import RichHandler

from app.common.exceptions import ConfigurationError
from app.common.logging_config import NOISY_LOGGERS, LoggingConfig, resolve_level


class TestLoggingConfig:
    """Tests for LoggingConfig."""

    def test_setup_basic(self, restore_root_logger):
        """A single console handler at the requested level."""
        LoggingConfig.setup(level="INFO")

        assert restore_root_logger.level == logging.INFO
        assert len(restore_root_logger.handlers) == 1
        assert isinstance(restore_root_logger.handlers[0], logging.StreamHandler)

    def test_setup_with_file(self, restore_root_logger, tmp_path):
        """A log file receives messages alongside the console."""
        log_file = tmp_path / "logs" / "qkrul.log"

        LoggingConfig.setup(level="DEBUG", log_file=str(log_file))

        assert len(restore_root_logger.handlers) == 2
        logging.getLogger("app.prognostics").debug("Trained predictor 7")
        for handler in restore_root_logger.handlers:
            handler.flush()
        assert "Trained predictor 7" in log_file.read_text(encoding="utf-8")

    def test_setup_from_env(self, restore_root_logger, tmp_path):
        """QKRUL_LOG_LEVEL and QKRUL_LOG_FILE configure the root logger."""
        env = {"QKRUL_LOG_LEVEL": "WARNING", "QKRUL_LOG_FILE": str(tmp_path / "run.log")}
        with patch.dict(os.environ, env):
            LoggingConfig.setup_from_env()

        assert restore_root_logger.level == logging.WARNING
        assert any(
            isinstance(h, logging.handlers.RotatingFileHandler)
            for h in restore_root_logger.handlers
        )

    def test_setup_from_env_defaults(self, restore_root_logger):
        """Without environment variables the level is INFO and there is no file."""
        with patch.dict(os.environ, {}, clear=True):
            LoggingConfig.setup_from_env()

        assert restore_root_logger.level == logging.INFO
        assert len(restore_root_logger.handlers) == 1

    def test_setup_from_env_validates(self, restore_root_logger, tmp_path):
        """An unknown QKRUL_LOG_LEVEL or a missing QKRUL_CMAPSS_DIR is rejected."""
        with patch.dict(os.environ, {"QKRUL_LOG_LEVEL": "loud"}, clear=True):
            with pytest.raises(ConfigurationError, match="QKRUL_LOG_LEVEL"):
                LoggingConfig.setup_from_env()
        with patch.dict(os.environ, {"QKRUL_CMAPSS_DIR": str(tmp_path / "absent")}, clear=True):
            with pytest.raises(ConfigurationError, match="QKRUL_CMAPSS_DIR"):
                LoggingConfig.setup_from_env()

    def test_custom_format(self, restore_root_logger):
        """A custom format string is applied to the handlers."""
        custom_format = "%(levelname)s: %(message)s"

        LoggingConfig.setup(format_string=custom_format)

        assert restore_root_logger.handlers[0].formatter._fmt == custom_format

    def test_log_rotation(self, restore_root_logger, tmp_path):
        """File logs rotate at 10MB with five backups."""
        LoggingConfig.setup(log_file=str(tmp_path / "rotating.log"), enable_rotation=True)

        file_handlers = [
            h
            for h in restore_root_logger.handlers
            if isinstance(h, logging.handlers.RotatingFileHandler)
        ]
        assert len(file_handlers) == 1
        assert file_handlers[0].maxBytes == 10 * 1024 * 1024
        assert file_handlers[0].backupCount == 5

    def test_without_rotation(self, restore_root_logger, tmp_path):
        """Rotation can be switched off."""
        LoggingConfig.setup(log_file=str(tmp_path / "plain.log"), enable_rotation=False)

        assert not any(
            isinstance(h, logging.handlers.RotatingFileHandler)
            for h in restore_root_logger.handlers
        )

    def test_rich_console(self, restore_root_logger):
        """rich_console swaps the plain console handler for rich on stderr."""
        LoggingConfig.setup(level="INFO", rich_console=True)

        assert len(restore_root_logger.handlers) == 1
        assert isinstance(restore_root_logger.handlers[0], RichHandler)
        assert restore_root_logger.handlers[0].console.stderr

    def test_plain_console_uses_stderr(self, restore_root_logger):
        """The plain console handler writes to stderr."""
        LoggingConfig.setup(level="INFO")

        assert restore_root_logger.handlers[0].stream is sys.stderr

    def test_unknown_level(self, restore_root_logger):
        """An unknown level name is a configuration error."""
        with pytest.raises(ConfigurationError, match="loud"):
            LoggingConfig.setup(level="loud")

    def test_quiet_third_party(self):
        """Third-party loggers are raised to WARNING."""
        logging.getLogger("fire").setLevel(logging.DEBUG)

        LoggingConfig.quiet_third_party()

        assert all(logging.getLogger(name).level == logging.WARNING for name in NOISY_LOGGERS)


class TestResolveLevel:
    """Tests for resolve_level."""

    @pytest.mark.parametrize(
        "level,expected",
        [("debug", logging.DEBUG), ("WARNING", logging.WARNING), (logging.ERROR, logging.ERROR)],
    )
    def test_names_and_numbers(self, level, expected):
        """Names are case-insensitive and numbers pass through."""
        assert resolve_level(level) == expected

    @pytest.mark.parametrize("level", [None, ""])
    def test_default(self, level):
        """Missing levels fall back to the default."""
        assert resolve_level(level, default=logging.ERROR) == logging.ERROR
