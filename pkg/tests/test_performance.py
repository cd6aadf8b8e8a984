"""
Tests for timing and parallel fan-out helpers.
"""
from loguru import logger

from performance import measure_system_resources, parallel_process, track_processing_time


def square_of(x):
    return x * x


class TestParallelProcess:
    def test_threads_preserve_order(self):
        items = list(range(20))
        assert parallel_process(square_of, items, max_workers=4, use_processes=False,
                                show_progress=False) == [x * x for x in items]

    def test_sequential(self):
        assert parallel_process(square_of, [3, 1, 2], max_workers=1, show_progress=False) == [9, 1, 4]

    def test_empty(self):
        assert parallel_process(square_of, [], max_workers=4, show_progress=False) == []

    def test_processes(self):
        assert parallel_process(square_of, [1, 2, 3], max_workers=2, show_progress=False) == [1, 4, 9]


class TestTracking:
    def test_logs_processing_time(self):
        @track_processing_time
        def work(x):
            return x + 1

        messages = []
        handler = logger.add(messages.append, level="DEBUG", format="{message}")
        try:
            assert work(1) == 2
        finally:
            logger.remove(handler)
        assert work.__name__ == "work"
        assert any(str(m).startswith("work took") for m in messages)

    def test_system_resources(self):
        resources = measure_system_resources()
        assert resources["memory_mb"] > 0
        assert "cpu_percent" in resources
