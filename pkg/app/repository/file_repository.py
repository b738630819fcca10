"""Directory-backed repository: one <key>.json or <key>.txt file per key."""

import json
import logging
from pathlib import Path
from typing import Any, List, Optional, Union

from app.repository.base import Repository, dump_document

logger = logging.getLogger(__name__)

_EXTENSIONS = {"json": "json", "text": "txt"}


class FileRepository(Repository):
    """File-based repository for persistent storage."""

    def __init__(self, base_path: Union[str, Path] = "models"):
        """Initialize file repository.

        Args:
            base_path: Directory holding the files (created if missing)
        """
        self.base_path = Path(base_path)
        self.base_path.mkdir(exist_ok=True, parents=True)

    def path_for(self, key: str, output_format: str = "json") -> Path:
        """File that stores key in the given format."""
        if output_format not in _EXTENSIONS:
            raise ValueError(f"Unsupported format: {output_format}")
        return self.base_path / f"{key}.{_EXTENSIONS[output_format]}"

    def _existing_path(self, key: str) -> Optional[Path]:
        for output_format in _EXTENSIONS:
            path = self.path_for(key, output_format)
            if path.exists():
                return path
        return None

    def save(self, key: str, data: Any, output_format: str = "json") -> None:
        file_path = self.path_for(key, output_format)
        content = dump_document(data) if output_format == "json" else str(data)
        try:
            file_path.write_text(content, encoding="utf-8")
            logger.debug("Saved %s to %s", key, file_path)
        except OSError as e:
            logger.error("Failed to save %s: %s", key, e)
            raise

    def load(self, key: str) -> Optional[Any]:
        """Parsed JSON for .json files, raw text for .txt files.

        Raises:
            json.JSONDecodeError: If a .json file is corrupted
        """
        file_path = self._existing_path(key)
        if file_path is None:
            logger.debug("No file for key %s in %s", key, self.base_path)
            return None
        text = file_path.read_text(encoding="utf-8")
        return json.loads(text) if file_path.suffix == ".json" else text

    def exists(self, key: str) -> bool:
        return self._existing_path(key) is not None

    def delete(self, key: str) -> None:
        for output_format in _EXTENSIONS:
            file_path = self.path_for(key, output_format)
            if file_path.exists():
                file_path.unlink()
                logger.debug("Deleted %s", file_path)

    def list_keys(self, prefix: str = "") -> List[str]:
        keys = {
            path.stem
            for extension in _EXTENSIONS.values()
            for path in self.base_path.glob(f"{prefix}*.{extension}")
        }
        return sorted(keys)
