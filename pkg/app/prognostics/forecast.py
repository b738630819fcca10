"""Recursive multi-step forecasting until the failure region and RUL aggregation."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from app.common.exceptions import (
    ConfigurationError,
    TrajectoryTooShortError,
    UntrainedPredictorError,
)
from app.common.models import RulEstimate, Trajectory
from app.prognostics.executor import OrderedExecutor
from app.prognostics.predictor import Predictor
from app.prognostics.selection import rank_predictors

logger = logging.getLogger(__name__)


class Aggregate(str, Enum):
    """How the failure times of the selected predictors are combined."""

    MEDIAN = "median"
    BEST = "best"


@dataclass
class ForecastConfig:
    """Selection and forecasting parameters."""

    j_select: int = 5
    horizon_cap: int = 500
    aggregate: Aggregate = Aggregate.MEDIAN

    def __post_init__(self):
        try:
            self.aggregate = Aggregate(self.aggregate)
        except ValueError as e:
            raise ConfigurationError(
                "aggregate", {"reason": "must be median or best", "value": self.aggregate}
            ) from e
        if self.j_select < 1:
            raise ConfigurationError("j_select", {"reason": "must be >= 1", "value": self.j_select})
        if self.horizon_cap < 1:
            raise ConfigurationError(
                "horizon_cap", {"reason": "must be >= 1", "value": self.horizon_cap}
            )


@dataclass
class ForecastResult:
    """Outcome of forecasting one test engine with one predictor.

    extension holds the normalized predictions for cycles t_c + 1 onward
    (t_f - t_c columns, or horizon_cap when censored) and states the region
    of each forecast input.
    """

    predictor_id: int
    t_c: int
    t_f: Optional[int]
    extension: np.ndarray
    states: List[int] = field(default_factory=list)

    @property
    def censored(self) -> bool:
        """True when the failure region was not reached within the horizon."""
        return self.t_f is None

    @property
    def rul(self) -> Optional[int]:
        """t_f - t_c, None when censored."""
        return None if self.t_f is None else self.t_f - self.t_c


def forecast_to_failure(
    predictor: Predictor, test: Trajectory, k: Optional[int] = None, horizon_cap: int = 500
) -> ForecastResult:
    """Forecast a test engine step by step until its input enters the failure region.

    The input at cycle t holds the values at t - k .. t - 1: observed values for
    cycles <= t_c and earlier predictions after that. The first cycle whose
    input falls in region n_L is the failure time t_f.
    """
    k = predictor.resolve_k(k)
    if horizon_cap < 1:
        raise ConfigurationError("horizon_cap", {"reason": "must be >= 1", "value": horizon_cap})
    model = predictor.model
    if model.n_centers == 0:
        raise UntrainedPredictorError(predictor.engine_id)

    observed = predictor.prepare(test).values
    s, t_c = observed.shape
    if t_c <= k:
        raise TrajectoryTooShortError(test.unit_id, t_c, k)

    failure_state = model.n_centers
    history = np.empty((s, t_c + horizon_cap))
    history[:, :t_c] = observed
    states = []
    for t in range(t_c + 1, t_c + horizon_cap + 1):
        # columns are 0-based: cycle c lives in column c - 1
        x = history[:, t - k - 1 : t - 1].reshape(-1)
        history[:, t - 1] = model.predict(x)
        state = model.assign_state(x)
        states.append(state)
        if state == failure_state:
            return ForecastResult(
                predictor_id=predictor.engine_id,
                t_c=t_c,
                t_f=t,
                extension=history[:, t_c:t].copy(),
                states=states,
            )

    logger.debug(
        "Predictor %d did not reach region %d for unit %d within %d cycles",
        predictor.engine_id,
        failure_state,
        test.unit_id,
        horizon_cap,
    )
    return ForecastResult(
        predictor_id=predictor.engine_id,
        t_c=t_c,
        t_f=None,
        extension=history[:, t_c:].copy(),
        states=states,
    )


def median_half_up(values: Sequence[int]) -> int:
    """Median of integers; an even count averages the middle pair rounding .5 upward."""
    if not values:
        raise ValueError("median of an empty sequence")
    ordered = sorted(values)
    middle = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[middle]
    return (ordered[middle - 1] + ordered[middle] + 1) // 2


def aggregate_failure_times(
    results: Sequence[ForecastResult], aggregate: Aggregate
) -> Optional[int]:
    """Combine the failure times of forecasts given in rank order; None if all are censored."""
    hits = [r.t_f for r in results if r.t_f is not None]
    if not hits:
        return None
    if Aggregate(aggregate) is Aggregate.BEST:
        return hits[0]
    return median_half_up(hits)


def estimate_rul(
    fleet: Sequence[Predictor],
    test: Trajectory,
    config: ForecastConfig,
    k: Optional[int] = None,
    threads: int = 1,
) -> RulEstimate:
    """Rank the fleet, forecast with the top J predictors and aggregate their failure times."""
    if not fleet:
        raise ConfigurationError("fleet", {"reason": "no trained predictors"})
    if config.j_select > len(fleet):
        raise ConfigurationError(
            "j_select",
            {"reason": f"exceeds fleet size {len(fleet)}", "value": config.j_select},
        )

    by_id = {p.engine_id: p for p in fleet}
    ranking = rank_predictors(fleet, test, k)
    selected = [by_id[pid] for pid, _ in ranking[: config.j_select]]

    def task(predictor: Predictor) -> ForecastResult:
        return forecast_to_failure(predictor, test, k, config.horizon_cap)

    results = OrderedExecutor(threads).map(task, selected)
    t_c = test.t_len
    t_f = aggregate_failure_times(results, config.aggregate)
    censored = t_f is None
    estimate = RulEstimate(
        engine_id=test.unit_id,
        t_c=t_c,
        rul=config.horizon_cap if censored else t_f - t_c,
        selected_ids=[p.engine_id for p in selected],
        t_f_per_predictor=[(r.predictor_id, r.t_f) for r in results],
        censored=censored,
    )
    logger.debug(
        "Unit %d: rul=%d censored=%s selected=%s",
        test.unit_id,
        estimate.rul,
        censored,
        estimate.selected_ids,
    )
    return estimate


def estimate_fleet(
    fleet: Sequence[Predictor],
    tests: Sequence[Trajectory],
    config: ForecastConfig,
    k: Optional[int] = None,
    threads: int = 1,
) -> List[RulEstimate]:
    """estimate_rul for every test engine, ordered by unit id.

    Engines too short for a single lag vector get a censored estimate instead of an error.
    """
    if not fleet:
        raise ConfigurationError("fleet", {"reason": "no trained predictors"})

    def task(test: Trajectory) -> RulEstimate:
        try:
            return estimate_rul(fleet, test, config, k)
        except TrajectoryTooShortError as e:
            logger.warning("Unit %d not estimated: %s", test.unit_id, e.message)
            return RulEstimate(
                engine_id=test.unit_id,
                t_c=test.t_len,
                rul=config.horizon_cap,
                censored=True,
            )

    estimates = OrderedExecutor(threads).map(task, sorted(tests, key=lambda t: t.unit_id))
    censored = sum(1 for e in estimates if e.censored)
    logger.info("Estimated RUL for %d engines (%d censored)", len(estimates), censored)
    return estimates
