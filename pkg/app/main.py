#!/usr/bin/env python3
"""
Main entry point for the qkrul command.
"""

import logging
import sys

import fire

from app.cli.prognostics_cli import PrognosticsCLI
from app.common.exceptions import ConfigurationError
from app.common.logging_config import LoggingConfig

logger = logging.getLogger(__name__)


def main():
    """Configure logging from the environment and dispatch to the CLI."""
    try:
        LoggingConfig.setup_from_env()
    except ConfigurationError as e:
        LoggingConfig.setup()
        logger.error("Invalid environment: %s", e.message)
        sys.exit(1)
    LoggingConfig.quiet_third_party()
    fire.Fire(PrognosticsCLI)


if __name__ == "__main__":
    main()
