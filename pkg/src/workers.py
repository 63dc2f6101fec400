"""
Order-preserving fan-out of independent work items.

Grid cells, random trials and spanning trees are evaluated independently; results
always come back in input order so reductions do not depend on scheduling.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """
    Apply fn to every item, serially or on a process pool.

    Args:
        fn: Picklable module-level callable
        items: Work items
        jobs: Worker count; values <= 1 run in-process

    Returns:
        Results in the order of items
    """
    work = list(items)
    if jobs <= 1 or len(work) <= 1:
        return [fn(item) for item in work]

    chunksize = max(1, len(work) // (jobs * 4))
    logger.debug(f"Dispatching {len(work)} items to {jobs} workers (chunksize {chunksize})")
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, work, chunksize=chunksize))
