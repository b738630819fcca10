"""Ordered thread-pool execution for per-engine work."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class OrderedExecutor:
    """Runs one task per item on a thread pool and returns results in input order."""

    def __init__(self, max_workers: int = 1):
        """Initialize executor.

        Args:
            max_workers: Worker cap; 1 runs everything on the calling thread
        """
        if max_workers < 1:
            raise ValueError(f"max_workers must be >= 1, got {max_workers}")
        self.max_workers = max_workers

    def map(self, task: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply task to every item; the first failing task's exception propagates."""
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [task(item) for item in items]

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(task, item) for item in items]
            results = []
            for future in futures:
                try:
                    results.append(future.result())
                except Exception as e:
                    logger.error("Task failed: %s", str(e))
                    for pending in futures:
                        pending.cancel()
                    raise
            return results
