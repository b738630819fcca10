"""Fleet training, predictor selection, recursive forecasting and RUL estimation."""

from app.prognostics.forecast import (
    Aggregate,
    ForecastConfig,
    ForecastResult,
    estimate_fleet,
    estimate_rul,
    forecast_to_failure,
    median_half_up,
)
from app.prognostics.predictor import Predictor, TrainingReport, state_sequence, train_fleet
from app.prognostics.results import read_results, write_forecast_trace, write_results
from app.prognostics.selection import rank_predictors

__all__ = [
    "Aggregate",
    "ForecastConfig",
    "ForecastResult",
    "Predictor",
    "TrainingReport",
    "estimate_fleet",
    "estimate_rul",
    "forecast_to_failure",
    "median_half_up",
    "rank_predictors",
    "read_results",
    "state_sequence",
    "train_fleet",
    "write_forecast_trace",
    "write_results",
]
