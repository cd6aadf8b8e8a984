"""
Performance helpers for the ES-GA TSP solver.
Provides processing-time tracking, resource sampling and parallel fan-out of
independent runs.
"""
import functools
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional

import psutil
from loguru import logger
from tqdm import tqdm

def measure_system_resources() -> Dict[str, float]:
    """Measure current process resource usage."""
    process = psutil.Process()
    return {
        'cpu_percent': process.cpu_percent(),
        'memory_mb': process.memory_info().rss / 1024 / 1024,
    }


def track_processing_time(func: Callable) -> Callable:
    """
    Decorator to track processing time of a function.

    Args:
        func: Function to track

    Returns:
        Callable: Wrapped function that logs its wall-clock time at debug level
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        processing_time = time.perf_counter() - start_time

        logger.debug(f"{func.__name__} took {processing_time:.3f}s")
        return result

    return wrapper


def parallel_process(func: Callable, items: List[Any], max_workers: Optional[int] = None,
                     use_processes: bool = True, desc: Optional[str] = None,
                     show_progress: bool = True) -> List[Any]:
    """
    Apply func to each item in parallel, preserving input order.

    Args:
        func: Picklable function to apply to each item
        items: List of items to process
        max_workers: Maximum number of workers (default: number of CPU cores);
            1 runs sequentially in-process
        use_processes: Whether to use processes instead of threads
        desc: Progress bar label
        show_progress: Whether to draw a tqdm progress bar

    Returns:
        List: Results of applying func to each item, in input order
    """
    if max_workers is None:
        max_workers = multiprocessing.cpu_count()

    with tqdm(total=len(items), desc=desc, disable=not show_progress) as progress:
        if max_workers <= 1 or len(items) <= 1:
            results = []
            for item in items:
                results.append(func(item))
                progress.update(1)
            return results

        Executor = ProcessPoolExecutor if use_processes else ThreadPoolExecutor
        results = []
        with Executor(max_workers=max_workers) as executor:
            for result in executor.map(func, items):
                results.append(result)
                progress.update(1)
        return results
