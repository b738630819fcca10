"""Storage interface for JSON documents and text artifacts."""

import json
from abc import ABC, abstractmethod
from typing import Any, List, Optional


def dump_document(data: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, shortest round-trip floats."""
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False) + "\n"


class Repository(ABC):
    """Documents addressed by a flat string key."""

    @abstractmethod
    def save(self, key: str, data: Any, output_format: str = "json") -> None:
        """Store data under key, replacing any previous value."""

    @abstractmethod
    def load(self, key: str) -> Optional[Any]:
        """Stored value, or None if the key is absent."""

    @abstractmethod
    def exists(self, key: str) -> bool:
        """Whether key holds a value."""

    @abstractmethod
    def delete(self, key: str) -> None:
        """Remove key if present."""

    @abstractmethod
    def list_keys(self, prefix: str = "") -> List[str]:
        """Sorted keys starting with prefix."""
