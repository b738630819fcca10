"""In-memory repository used by tests."""

import json
from typing import Any, Dict, List, Optional

from app.repository.base import Repository, dump_document


class MemoryRepository(Repository):
    """Keeps the serialized text of each document, so loads see what a file would hold."""

    def __init__(self):
        self._storage: Dict[str, str] = {}
        self._formats: Dict[str, str] = {}

    def save(self, key: str, data: Any, output_format: str = "json") -> None:
        if output_format not in ("json", "text"):
            raise ValueError(f"Unsupported format: {output_format}")
        self._storage[key] = dump_document(data) if output_format == "json" else str(data)
        self._formats[key] = output_format

    def load(self, key: str) -> Optional[Any]:
        if key not in self._storage:
            return None
        text = self._storage[key]
        return json.loads(text) if self._formats[key] == "json" else text

    def exists(self, key: str) -> bool:
        return key in self._storage

    def delete(self, key: str) -> None:
        self._storage.pop(key, None)
        self._formats.pop(key, None)

    def list_keys(self, prefix: str = "") -> List[str]:
        return sorted(key for key in self._storage if key.startswith(prefix))
