"""
Worker Pool
-----------
Contiguous chunking of sweeps over a process pool. Results come back in
input order, so merged output does not depend on the worker count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def split_chunks(items: Sequence[T], parts: int) -> List[List[T]]:
    """Split items into at most `parts` contiguous, nearly equal chunks."""
    items = list(items)
    if not items:
        return []
    parts = max(1, min(parts, len(items)))
    size, extra = divmod(len(items), parts)
    chunks, start = [], 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(items[start:end])
        start = end
    return chunks


def run_chunked(func: Callable[[List[T]], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Apply func to contiguous chunks of items.

    Args:
        func: Picklable callable taking one chunk (a list)
        items: Work items
        workers: Process count; 1 runs inline

    Returns:
        One result per chunk, in input order
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if workers == 1:
        return [func(list(items))] if items else []
    chunks = split_chunks(items, workers * 4)
    logger.debug("dispatching %d chunk(s) to %d worker(s)", len(chunks), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, chunks))
