"""Per-engine predictors: training, persistence and discrete-state replay."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.cmapss.preprocessing import apply_normalization, fit_normalization, lag_matrix
from app.common.exceptions import (
    ConfigurationError,
    ModelFormatError,
    TrajectoryTooShortError,
    UntrainedPredictorError,
)
from app.common.models import Normalization, Trajectory
from app.prognostics.executor import OrderedExecutor
from app.qkrls.kernel import KernelParams
from app.qkrls.model import QkrlsModel

logger = logging.getLogger(__name__)


@dataclass
class Predictor:
    """A QKRLS model trained on one run-to-failure trajectory.

    The last code vector of the model marks the failure region of that engine.
    """

    engine_id: int
    model: QkrlsModel
    norm: Optional[Normalization] = None

    @property
    def k(self) -> int:
        """Lags per sensor."""
        return self.model.k

    @property
    def failure_state(self) -> int:
        """Index n_L of the failure region."""
        if self.model.n_centers == 0:
            raise UntrainedPredictorError(self.engine_id)
        return self.model.n_centers

    def prepare(self, trajectory: Trajectory) -> Trajectory:
        """Normalize a raw trajectory the way the training fleet was normalized."""
        if self.norm is None:
            return trajectory
        return apply_normalization(trajectory, self.norm)

    def resolve_k(self, k: Optional[int]) -> int:
        """Check a caller-supplied lag count against the trained one."""
        if k is not None and k != self.model.k:
            raise ConfigurationError(
                "k", {"reason": f"predictor {self.engine_id} was trained with k={self.model.k}"}
            )
        return self.model.k

    def to_dict(self) -> Dict[str, Any]:
        """Model document plus provenance."""
        document = self.model.to_dict()
        document["engine_id"] = self.engine_id
        document["normalization"] = self.norm.to_dict() if self.norm is not None else None
        document["sensor_ids"] = list(self.norm.sensor_ids) if self.norm is not None else []
        return document

    @classmethod
    def from_dict(cls, data: Dict[str, Any], source: str = "<model>") -> "Predictor":
        """Rebuild a predictor from its document."""
        model = QkrlsModel.from_dict(data, source)
        if "engine_id" not in data:
            raise ModelFormatError(source, "missing fields ['engine_id']")
        norm_data = data.get("normalization")
        try:
            norm = Normalization.from_dict(norm_data) if norm_data else None
        except (KeyError, TypeError, ValueError, ConfigurationError) as e:
            raise ModelFormatError(source, f"invalid normalization: {e}") from e
        return cls(engine_id=int(data["engine_id"]), model=model, norm=norm)


@dataclass
class TrainingReport:
    """Outcome of training a fleet."""

    pair_counts: Dict[int, int] = field(default_factory=dict)
    codebook_sizes: Dict[int, int] = field(default_factory=dict)
    skipped: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "models": [
                {
                    "engine_id": engine_id,
                    "pairs": self.pair_counts[engine_id],
                    "codebook_size": self.codebook_sizes[engine_id],
                }
                for engine_id in sorted(self.pair_counts)
            ],
            "skipped": sorted(self.skipped),
        }


def train_predictor(
    trajectory: Trajectory,
    k: int,
    kernel: KernelParams,
    alpha: float,
    eps_u: float,
    norm: Optional[Normalization] = None,
) -> Predictor:
    """Stream the lag-embedded pairs of one trajectory through a fresh model in cycle order."""
    values = trajectory.values if norm is None else apply_normalization(trajectory, norm).values
    X, D, _ = lag_matrix(values, k, trajectory.unit_id)
    model = QkrlsModel(s=trajectory.s, k=k, kernel=kernel, alpha=alpha, eps_u=eps_u)
    for x, d in zip(X, D):
        model.update(x, d)
    model.finalize()
    logger.debug(
        "Trained predictor %d: %d pairs, %d code vectors",
        trajectory.unit_id,
        X.shape[0],
        model.n_centers,
    )
    return Predictor(engine_id=trajectory.unit_id, model=model, norm=norm)


def train_fleet(
    trajectories: Sequence[Trajectory],
    k: int,
    kernel: KernelParams,
    alpha: float,
    eps_u: float,
    norm: Optional[Normalization] = None,
    threads: int = 1,
) -> Tuple[List[Predictor], TrainingReport]:
    """Train one predictor per trajectory.

    Trajectories are normalized with norm, fitted on the whole fleet when None.
    Trajectories too short for a lag vector are skipped and reported.
    """
    if k < 1:
        raise ConfigurationError("k", {"reason": "must be >= 1", "value": k})
    if norm is None:
        norm = fit_normalization(trajectories)

    report = TrainingReport()
    usable = []
    for trajectory in trajectories:
        if trajectory.t_len <= k:
            logger.warning(
                "Skipping unit %d: %d cycles, needs more than k=%d",
                trajectory.unit_id,
                trajectory.t_len,
                k,
            )
            report.skipped.append(trajectory.unit_id)
        else:
            usable.append(trajectory)

    def task(trajectory: Trajectory) -> Predictor:
        return train_predictor(trajectory, k, kernel, alpha, eps_u, norm)

    fleet = OrderedExecutor(threads).map(task, sorted(usable, key=lambda t: t.unit_id))
    for trajectory, predictor in zip(sorted(usable, key=lambda t: t.unit_id), fleet):
        report.pair_counts[predictor.engine_id] = trajectory.t_len - k
        report.codebook_sizes[predictor.engine_id] = predictor.model.n_centers

    logger.info("Trained %d predictors (%d skipped)", len(fleet), len(report.skipped))
    return fleet, report


def state_sequence(
    predictor: Predictor, trajectory: Trajectory, k: Optional[int] = None
) -> List[int]:
    """Discrete state (region index, 1-based) of every lag vector in cycle order."""
    k = predictor.resolve_k(k)
    if predictor.model.n_centers == 0:
        raise UntrainedPredictorError(predictor.engine_id)
    values = predictor.prepare(trajectory).values
    if values.shape[1] <= k:
        raise TrajectoryTooShortError(trajectory.unit_id, values.shape[1], k)
    X, _, _ = lag_matrix(values, k, trajectory.unit_id)
    return predictor.model.assign_states(X)
