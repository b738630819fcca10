"""Persistence of trained predictors and the fleet manifest."""

import json
import logging
from typing import Any, Dict, List, Optional, Sequence

from app.common.exceptions import ModelFormatError
from app.prognostics.predictor import Predictor, TrainingReport
from app.qkrls.model import MODEL_VERSION
from app.repository.base import Repository
from app.repository.factory import RepositoryFactory

logger = logging.getLogger(__name__)

FLEET_KEY = "fleet"
MODEL_PREFIX = "model_"


def model_key(engine_id: int) -> str:
    """Repository key of one predictor."""
    return f"{MODEL_PREFIX}{engine_id}"


class PrognosticsDataService:
    """Saves and loads model documents through a repository."""

    def __init__(self, repository: Optional[Repository] = None):
        """Initialize data service.

        Args:
            repository: Repository instance (file repository under ./models if None)
        """
        self.repository = repository or RepositoryFactory.create("file")

    def _load_document(self, key: str) -> Optional[Any]:
        try:
            return self.repository.load(key)
        except json.JSONDecodeError as e:
            raise ModelFormatError(key, f"not valid JSON: {e}") from e

    def save_predictor(self, predictor: Predictor) -> str:
        """Store one predictor; returns its key."""
        key = model_key(predictor.engine_id)
        self.repository.save(key, predictor.to_dict())
        logger.debug("Saved predictor %d as %s", predictor.engine_id, key)
        return key

    def load_predictor(self, engine_id: int) -> Predictor:
        """Load one predictor by engine id."""
        key = model_key(engine_id)
        data = self._load_document(key)
        if data is None:
            raise ModelFormatError(key, "model file not found")
        return Predictor.from_dict(data, source=key)

    def clear_models(self) -> int:
        """Delete every stored predictor; returns how many were removed."""
        keys = self.repository.list_keys(MODEL_PREFIX)
        for key in keys:
            self.repository.delete(key)
        if keys:
            logger.info("Removed %d stale model files", len(keys))
        return len(keys)

    def save_fleet_manifest(
        self,
        fleet: Sequence[Predictor],
        report: TrainingReport,
        config: Dict[str, Any],
    ) -> str:
        """Store the manifest listing the fleet and its shared preprocessing."""
        first = fleet[0] if fleet else None
        manifest = {
            "version": MODEL_VERSION,
            "engine_ids": sorted(p.engine_id for p in fleet),
            "k": first.k if first else config.get("k"),
            "sensor_ids": list(config.get("sensor_ids", [])),
            "normalization": first.norm.to_dict() if first and first.norm else None,
            "config": dict(config),
            "training": report.to_dict(),
        }
        self.repository.save(FLEET_KEY, manifest)
        logger.info("Saved fleet manifest with %d predictors", len(fleet))
        return FLEET_KEY

    def load_fleet_manifest(self) -> Dict[str, Any]:
        """Load and check the fleet manifest."""
        manifest = self._load_document(FLEET_KEY)
        if manifest is None:
            raise ModelFormatError(FLEET_KEY, "fleet manifest not found; run train first")
        if not isinstance(manifest, dict):
            raise ModelFormatError(FLEET_KEY, "document is not a JSON object")
        if manifest.get("version") != MODEL_VERSION:
            raise ModelFormatError(
                FLEET_KEY,
                f"unsupported version {manifest.get('version')!r}, expected {MODEL_VERSION}",
            )
        missing = [key for key in ("engine_ids", "k", "sensor_ids") if key not in manifest]
        if missing:
            raise ModelFormatError(FLEET_KEY, f"missing fields {missing}")
        return manifest

    def load_fleet(self) -> List[Predictor]:
        """Every predictor named by the manifest, in engine id order."""
        manifest = self.load_fleet_manifest()
        fleet = [self.load_predictor(int(engine_id)) for engine_id in manifest["engine_ids"]]
        logger.info("Loaded %d predictors", len(fleet))
        return fleet

    def save_fleet(
        self, fleet: Sequence[Predictor], report: TrainingReport, config: Dict[str, Any]
    ) -> List[str]:
        """Replace the stored fleet: clear old models, save each predictor and the manifest."""
        self.clear_models()
        keys = [self.save_predictor(predictor) for predictor in fleet]
        keys.append(self.save_fleet_manifest(fleet, report, config))
        return keys
