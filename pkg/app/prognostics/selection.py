"""Ranking of fleet predictors by one-step-ahead error on a test trajectory."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.cmapss.preprocessing import lag_matrix
from app.common.exceptions import TrajectoryTooShortError, UntrainedPredictorError
from app.common.models import Trajectory
from app.prognostics.predictor import Predictor

logger = logging.getLogger(__name__)


def prediction_error(predictor: Predictor, test: Trajectory, k: Optional[int] = None) -> float:
    """Root of the summed squared one-step-ahead error over t = k + 1 .. t_c and all sensors."""
    k = predictor.resolve_k(k)
    if predictor.model.n_centers == 0:
        raise UntrainedPredictorError(predictor.engine_id)
    values = predictor.prepare(test).values
    if values.shape[1] <= k:
        raise TrajectoryTooShortError(test.unit_id, values.shape[1], k)
    X, D, _ = lag_matrix(values, k, test.unit_id)
    residual = D - predictor.model.predict_batch(X)
    return float(np.sqrt(np.sum(residual**2)))


def rank_predictors(
    fleet: Sequence[Predictor], test: Trajectory, k: Optional[int] = None
) -> List[Tuple[int, float]]:
    """(predictor id, rmse) pairs in ascending error; equal errors keep ascending id order."""
    scored = [(p.engine_id, prediction_error(p, test, k)) for p in fleet]
    ranking = sorted(scored, key=lambda item: (item[1], item[0]))
    if ranking:
        logger.debug(
            "Unit %d: best predictor %d (rmse %.4f)", test.unit_id, ranking[0][0], ranking[0][1]
        )
    return ranking
