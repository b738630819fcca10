"""Factory for creating repository instances."""

from pathlib import Path
from typing import Union

from app.common.exceptions import ConfigurationError
from app.repository.base import Repository
from app.repository.file_repository import FileRepository
from app.repository.memory_repository import MemoryRepository


class RepositoryFactory:
    """Factory for creating repository instances."""

    @staticmethod
    def create(repository_type: str = "file", base_path: Union[str, Path] = "models") -> Repository:
        """Create a repository instance.

        Args:
            repository_type: 'file' or 'memory'
            base_path: Directory for file repositories

        Raises:
            ConfigurationError: If repository type is unknown
        """
        if repository_type == "file":
            return FileRepository(base_path)
        if repository_type == "memory":
            return MemoryRepository()
        raise ConfigurationError(
            "repository_type", {"reason": f"unknown repository type {repository_type!r}"}
        )
