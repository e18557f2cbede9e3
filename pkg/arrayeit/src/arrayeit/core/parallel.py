"""Order-preserving thread pool map for independent grid points.

numpy and scipy release the GIL inside their linear algebra kernels, so
threads give real speedups for per-point solves without pickling configs.
"""

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from arrayeit.core.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def worker_count(threads: int | None = None) -> int:
    """Resolve the worker count: explicit argument, then ARRAYEIT_THREADS, then CPU count."""
    n = threads if threads is not None else settings.threads
    if n is None:
        n = min(32, os.cpu_count() or 1)
    return max(1, int(n))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], *, threads: int | None = None) -> list[R]:
    """Apply fn to every item, preserving order. Exceptions propagate from the first failing item."""
    items = list(items)
    workers = min(worker_count(threads), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    logger.debug("evaluating %d points on %d threads", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
