"""Fire-facing CLI built on the command pattern."""

import logging
import sys
from typing import Any, Callable, Dict, Optional

from app.cli.base import CommandContext
from app.cli.registry import registry
from app.common.exceptions import PrognosticsException
from app.common.logging_config import LoggingConfig
from app.config.settings import parse_sensor_ids, resolve_run_config

logger = logging.getLogger(__name__)


class PrognosticsCLI:
    """Remaining useful life estimation for turbofan engine fleets.

    Flags override the --config file, which overrides built-in defaults.
    Negative window bounds are given as --window_lo=-13.
    """

    def __init__(self):
        self.registry = registry

    @staticmethod
    def _overrides(
        k=None,
        sigma=None,
        alpha=None,
        eps_u=None,
        sensors=None,
        j=None,
        horizon=None,
        aggregate=None,
        window_lo=None,
        window_hi=None,
        threads=None,
    ) -> Dict[str, Any]:
        """Map flag names onto RunConfig fields, dropping flags that were not given."""
        overrides = {
            "k": k,
            "sigma": sigma,
            "alpha": alpha,
            "eps_u": eps_u,
            "sensor_ids": parse_sensor_ids(sensors) if sensors is not None else None,
            "j_select": j,
            "horizon_cap": horizon,
            "aggregate": aggregate,
            "window_lo": window_lo,
            "window_hi": window_hi,
            "threads": threads,
        }
        return {key: value for key, value in overrides.items() if value is not None}

    def _execute_command(
        self, name: str, build_context: Callable[[], CommandContext], verbose: bool = False
    ) -> None:
        """Build the context and run the command; errors exit with status 1 unless verbose."""
        if verbose:
            LoggingConfig.setup(level="DEBUG")
        try:
            context = build_context()
            command = self.registry.create(name)
            command.execute(context)
        except Exception as e:  # pylint: disable=broad-except
            message = e.message if isinstance(e, PrognosticsException) else str(e)
            logger.error("%s failed: %s", name, message)
            if verbose:
                raise
            sys.exit(1)

    def train(
        self,
        train_file: str,
        out_dir: str = "models",
        config: Optional[str] = None,
        k: Optional[int] = None,
        sigma: Optional[float] = None,
        alpha: Optional[float] = None,
        eps_u: Optional[float] = None,
        sensors=None,
        threads: Optional[int] = None,
        verbose: bool = False,
    ):
        """Train one predictor per engine of TRAIN_FILE and save them to OUT_DIR."""

        def build() -> CommandContext:
            overrides = self._overrides(
                k=k, sigma=sigma, alpha=alpha, eps_u=eps_u, sensors=sensors, threads=threads
            )
            return CommandContext(
                config=resolve_run_config(config, **overrides),
                explicit=overrides,
                verbose=verbose,
                train_file=train_file,
                model_dir=out_dir,
            )

        self._execute_command("train", build, verbose)

    def predict(
        self,
        test_file: str,
        model_dir: str = "models",
        out_csv: str = "results.csv",
        config: Optional[str] = None,
        j: Optional[int] = None,
        horizon: Optional[int] = None,
        aggregate: Optional[str] = None,
        k: Optional[int] = None,
        sensors=None,
        threads: Optional[int] = None,
        rul_file: Optional[str] = None,
        forecast_dir: Optional[str] = None,
        verbose: bool = False,
    ):
        """Estimate the RUL of every engine in TEST_FILE and write OUT_CSV."""

        def build() -> CommandContext:
            overrides = self._overrides(
                j=j, horizon=horizon, aggregate=aggregate, k=k, sensors=sensors, threads=threads
            )
            return CommandContext(
                config=resolve_run_config(config, **overrides),
                explicit=overrides,
                verbose=verbose,
                test_file=test_file,
                model_dir=model_dir,
                out_csv=out_csv,
                rul_file=rul_file,
                forecast_dir=forecast_dir,
            )

        self._execute_command("predict", build, verbose)

    def evaluate(
        self,
        results_csv: str,
        rul_file: str,
        output_dir: str = "metrics",
        config: Optional[str] = None,
        window_lo: Optional[int] = None,
        window_hi: Optional[int] = None,
        verbose: bool = False,
    ):
        """Score RESULTS_CSV against RUL_FILE; writes metrics.json, metrics.txt, histogram.csv."""

        def build() -> CommandContext:
            overrides = self._overrides(window_lo=window_lo, window_hi=window_hi)
            return CommandContext(
                config=resolve_run_config(config, **overrides),
                explicit=overrides,
                verbose=verbose,
                results_csv=results_csv,
                rul_file=rul_file,
                output_dir=output_dir,
            )

        self._execute_command("evaluate", build, verbose)

    def inspect(
        self,
        model_file: str,
        trajectory_file: Optional[str] = None,
        unit: Optional[int] = None,
        verbose: bool = False,
    ):
        """Print the codebook of MODEL_FILE, and the state path of a unit of TRAJECTORY_FILE."""

        def build() -> CommandContext:
            return CommandContext(
                verbose=verbose,
                model_file=model_file,
                trajectory_file=trajectory_file,
                unit=unit,
            )

        self._execute_command("inspect", build, verbose)

    def list_commands(self):
        """List available commands."""
        print("Available commands:")
        for name, description in sorted(self.registry.list_commands().items()):
            print(f"  {name:<10} - {description}")
        print("\nUse 'qkrul <command> --help' for more info")
