"""Deterministic parallel map for experiment grids.

Parallelism is opt-in through the SMOOTHNESS_LAB_THREADS environment
variable; results always come back in input order, so reports are
byte-identical regardless of the thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("SMOOTHNESS_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def thread_map(fn, items):
    """Map fn over items, preserving order; threaded only if configured."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
