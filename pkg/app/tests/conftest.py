"""Shared fixtures: synthetic train/test fleets and benchmark files on disk."""

import logging
import logging.handlers
from typing import List

import pytest
from rich.logging import RichHandler

from app.common.models import Trajectory
from app.tests.helpers import SENSOR_IDS, cmapss_text, make_trajectory


@pytest.fixture
def train_fleet_trajectories() -> List[Trajectory]:
    """Four run-to-failure engines over the default five sensors."""
    return [
        make_trajectory(unit, 36 + 4 * unit, s=5, seed=unit, sensor_ids=SENSOR_IDS)
        for unit in range(1, 5)
    ]


@pytest.fixture
def test_fleet_trajectories() -> List[Trajectory]:
    """Three truncated engines drawn from the same degradation family."""
    engines = []
    for unit, cut in ((1, 25), (2, 30), (3, 22)):
        full = make_trajectory(unit, 40 + 2 * unit, s=5, seed=100 + unit, sensor_ids=SENSOR_IDS)
        engines.append(Trajectory(unit, full.values[:, :cut], SENSOR_IDS))
    return engines


@pytest.fixture
def cmapss_files(tmp_path, train_fleet_trajectories, test_fleet_trajectories):
    """train/test/RUL files on disk in benchmark format."""
    train_file = tmp_path / "train_FD001.txt"
    test_file = tmp_path / "test_FD001.txt"
    rul_file = tmp_path / "RUL_FD001.txt"
    train_file.write_text(cmapss_text(train_fleet_trajectories), encoding="utf-8")
    test_file.write_text(cmapss_text(test_fleet_trajectories), encoding="utf-8")
    rul_file.write_text("17\n14\n22\n", encoding="utf-8")
    return {"train": train_file, "test": test_file, "rul": rul_file}


@pytest.fixture
def restore_root_logger():
    """Drop the handlers LoggingConfig installed and restore the root level."""
    root_logger = logging.getLogger()
    level = root_logger.level
    yield root_logger
    installed = (
        logging.StreamHandler,
        logging.FileHandler,
        logging.handlers.RotatingFileHandler,
        RichHandler,
    )
    for handler in list(root_logger.handlers):
        if type(handler) in installed:
            root_logger.removeHandler(handler)
            handler.close()
    root_logger.setLevel(level)
