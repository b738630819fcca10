"""Concrete command implementations for the prognostics CLI."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List

import numpy as np
from rich.console import Console
from rich.table import Table

from app.cli.base import Command, CommandContext
from app.cmapss.parser import DEFAULT_SENSOR_IDS, load_fleet, parse_rul_file
from app.common.exceptions import ConfigurationError, ModelFormatError
from app.common.models import ErrorRecord, RulEstimate, Trajectory
from app.config.settings import RunConfig
from app.metrics.scoring import compute_metrics
from app.prognostics.forecast import ForecastConfig, estimate_fleet, forecast_to_failure
from app.prognostics.predictor import Predictor, state_sequence, train_fleet
from app.prognostics.results import read_results, write_forecast_trace, write_results
from app.qkrls.kernel import KernelParams
from app.reporter.metrics_reporter import MetricsReporter, render_metrics_table
from app.repository.file_repository import FileRepository
from app.services.data_service import PrognosticsDataService

logger = logging.getLogger(__name__)

# RunConfig fields that do not change any artifact
_RUNTIME_ONLY = ("threads", "log_level")


def hyperparameters(config: RunConfig) -> Dict[str, Any]:
    """Config echo stored in fleet.json."""
    return {key: value for key, value in config.to_dict().items() if key not in _RUNTIME_ONLY}


def _require(value: Any, name: str) -> Any:
    if value is None or value == "":
        raise ConfigurationError(name, {"reason": "required"})
    return value


def _truth_by_engine(rul_file: str) -> Dict[int, int]:
    """Line i of a RUL file holds the true RUL of engine i."""
    return {position + 1: rul for position, rul in enumerate(parse_rul_file(rul_file))}


class TrainCommand(Command):
    """Train one predictor per training engine."""

    @property
    def name(self) -> str:
        return "train"

    @property
    def description(self) -> str:
        return "Train one QKRLS predictor per engine of a run-to-failure file"

    def execute(self, context: CommandContext) -> None:
        config = context.config
        train_file = _require(context.train_file, "train_file")
        logger.info("Training on %s (k=%d, sensors=%s)", train_file, config.k, config.sensor_ids)

        trajectories = load_fleet(train_file, config.sensor_ids)
        if not trajectories:
            raise ConfigurationError("train_file", {"reason": f"no engines in {train_file}"})
        fleet, report = train_fleet(
            trajectories,
            k=config.k,
            kernel=KernelParams(config.sigma),
            alpha=config.alpha,
            eps_u=config.eps_u,
            threads=config.threads,
        )
        if not fleet:
            raise ConfigurationError("k", {"reason": "every training trajectory is too short"})

        service = PrognosticsDataService(FileRepository(context.model_dir))
        service.save_fleet(fleet, report, hyperparameters(config))
        logger.info("Saved %d models and fleet.json to %s", len(fleet), context.model_dir)


class PredictCommand(Command):
    """Estimate the RUL of every test engine."""

    @property
    def name(self) -> str:
        return "predict"

    @property
    def description(self) -> str:
        return "Estimate remaining useful life of each test engine with a trained fleet"

    @staticmethod
    def _check_explicit(context: CommandContext, name: str, stored: Any) -> None:
        given = context.explicit.get(name)
        if given is not None and given != stored:
            raise ConfigurationError(
                name, {"reason": f"models were trained with {name}={stored}", "value": given}
            )

    def execute(self, context: CommandContext) -> None:
        config = context.config
        test_file = _require(context.test_file, "test_file")
        if not Path(context.model_dir).is_dir():
            raise ModelFormatError(context.model_dir, "model directory not found")

        service = PrognosticsDataService(FileRepository(context.model_dir))
        manifest = service.load_fleet_manifest()
        k = int(manifest["k"])
        sensor_ids = [int(i) for i in manifest["sensor_ids"]]
        self._check_explicit(context, "k", k)
        self._check_explicit(context, "sensor_ids", sensor_ids)
        fleet = service.load_fleet()

        tests = load_fleet(test_file, sensor_ids)
        forecast_config = ForecastConfig(
            j_select=config.j_select, horizon_cap=config.horizon_cap, aggregate=config.aggregate
        )
        estimates = estimate_fleet(fleet, tests, forecast_config, k, threads=config.threads)

        if context.rul_file:
            truth = _truth_by_engine(context.rul_file)
            if len(truth) != len(estimates):
                logger.warning(
                    "%s has %d lines for %d test engines",
                    context.rul_file,
                    len(truth),
                    len(estimates),
                )
            for estimate in estimates:
                estimate.rul_true = truth.get(estimate.engine_id)

        write_results(estimates, context.out_csv)
        if context.forecast_dir:
            self._write_traces(fleet, tests, estimates, k, config.horizon_cap, context.forecast_dir)

    @staticmethod
    def _write_traces(
        fleet: List[Predictor],
        tests: List[Trajectory],
        estimates: List[RulEstimate],
        k: int,
        horizon_cap: int,
        forecast_dir: str,
    ) -> None:
        """Forecast trace of the top-ranked predictor for every estimated engine."""
        by_id = {p.engine_id: p for p in fleet}
        tests_by_id = {t.unit_id: t for t in tests}
        for estimate in estimates:
            if not estimate.selected_ids:
                continue
            best = by_id[estimate.selected_ids[0]]
            test = tests_by_id[estimate.engine_id]
            result = forecast_to_failure(best, test, k, horizon_cap)
            path = Path(forecast_dir) / f"forecast_{estimate.engine_id}.csv"
            write_forecast_trace(result, test, best.norm, path)
        logger.info("Wrote forecast traces to %s", forecast_dir)


class EvaluateCommand(Command):
    """Score a results file against ground truth."""

    @property
    def name(self) -> str:
        return "evaluate"

    @property
    def description(self) -> str:
        return "Compute MSE, MAE, MAPE, score, accuracy rate, R2 and the error histogram"

    def execute(self, context: CommandContext) -> None:
        config = context.config
        results_csv = _require(context.results_csv, "results_csv")
        rul_file = _require(context.rul_file, "rul_file")

        estimates = read_results(results_csv)
        records = ErrorRecord.from_estimates(estimates, _truth_by_engine(rul_file))
        report = compute_metrics(records, config.window_lo, config.window_hi)
        MetricsReporter().write(report, context.output_dir)
        print(render_metrics_table(report), end="")


class InspectCommand(Command):
    """Dump a saved model."""

    @property
    def name(self) -> str:
        return "inspect"

    @property
    def description(self) -> str:
        return "Show the codebook and weights of a saved model"

    @staticmethod
    def _read_predictor(model_file: str) -> Predictor:
        try:
            data = json.loads(Path(model_file).read_text(encoding="utf-8"))
        except OSError as e:
            raise ModelFormatError(model_file, f"cannot read file: {e}") from e
        except json.JSONDecodeError as e:
            raise ModelFormatError(model_file, f"not valid JSON: {e}") from e
        return Predictor.from_dict(data, source=model_file)

    @staticmethod
    def _codebook_table(predictor: Predictor) -> Table:
        model = predictor.model
        table = Table(title=f"Codebook of predictor {predictor.engine_id}")
        table.add_column("Region", justify="right")
        table.add_column("Count", justify="right")
        table.add_column("|center|", justify="right")
        table.add_column("|beta|", justify="right")
        center_norms = np.linalg.norm(model.codebook.centers, axis=1)
        beta_norms = np.linalg.norm(model.beta, axis=1)
        for region, (count, c_norm, b_norm) in enumerate(
            zip(model.codebook.counts, center_norms, beta_norms), 1
        ):
            table.add_row(str(region), str(int(count)), f"{c_norm:.6f}", f"{b_norm:.6f}")
        return table

    def _select_trajectory(self, context: CommandContext, predictor: Predictor) -> Trajectory:
        sensor_ids = (
            predictor.norm.sensor_ids
            if predictor.norm is not None and predictor.norm.sensor_ids
            else DEFAULT_SENSOR_IDS
        )
        unit = context.unit if context.unit is not None else predictor.engine_id
        for trajectory in load_fleet(context.trajectory_file, sensor_ids):
            if trajectory.unit_id == unit:
                return trajectory
        raise ConfigurationError(
            "unit", {"reason": f"unit {unit} not found in {context.trajectory_file}"}
        )

    def execute(self, context: CommandContext) -> None:
        predictor = self._read_predictor(_require(context.model_file, "model_file"))
        model = predictor.model

        print(f"engine_id: {predictor.engine_id}")
        print(f"n_L: {model.n_centers}")
        print(f"pairs: {int(model.codebook.total_count)}")
        print(
            f"k: {model.k}  sigma: {model.kernel.sigma}  alpha: {model.alpha}  eps_u: {model.eps_u}"
        )
        Console(highlight=False).print(self._codebook_table(predictor))

        if context.trajectory_file:
            trajectory = self._select_trajectory(context, predictor)
            states = state_sequence(predictor, trajectory)
            print(f"states (unit {trajectory.unit_id}): {' '.join(str(s) for s in states)}")
