"""Key-value persistence of model, fleet and result documents."""

from app.repository.base import Repository
from app.repository.factory import RepositoryFactory
from app.repository.file_repository import FileRepository
from app.repository.memory_repository import MemoryRepository

__all__ = ["FileRepository", "MemoryRepository", "Repository", "RepositoryFactory"]
