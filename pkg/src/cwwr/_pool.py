"""Tiny worker-pool helper for the embarrassingly parallel scans.

Parallelism is capped by the CWWR_THREADS environment variable (default 1,
i.e. serial).  Results are always assembled in submission order, so outputs
are identical regardless of the schedule.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("CWWR_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def map_ordered(fn, items):
    """Map fn over items, preserving order; threads only when capped above 1."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
