"""Tests for OrderedExecutor."""

import threading
import time

import pytest

from app.prognostics.executor import OrderedExecutor


class TestOrderedExecutor:
    """Tests for OrderedExecutor."""

    def test_serial_runs_on_calling_thread(self):
        """One worker runs every task on the caller's thread."""
        caller = threading.get_ident()
        threads = OrderedExecutor(1).map(lambda _: threading.get_ident(), range(4))
        assert threads == [caller] * 4

    def test_results_keep_input_order(self):
        """Later items finishing first do not reorder the results."""

        def task(item):
            time.sleep(0.02 * (4 - item))
            return item * item

        assert OrderedExecutor(4).map(task, range(5)) == [0, 1, 4, 9, 16]

    def test_empty_input(self):
        """No items, no results."""
        assert OrderedExecutor(3).map(lambda item: item, []) == []

    def test_failure_propagates(self):
        """The exception of a failing task reaches the caller."""

        def task(item):
            if item == 2:
                raise RuntimeError("engine 2 failed")
            return item

        with pytest.raises(RuntimeError, match="engine 2"):
            OrderedExecutor(2).map(task, range(4))

    def test_invalid_worker_count(self):
        """At least one worker is required."""
        with pytest.raises(ValueError):
            OrderedExecutor(0)
