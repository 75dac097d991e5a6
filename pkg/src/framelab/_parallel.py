"""Thread fan-out with order-preserving results.

Kernels release the GIL, so threads give real parallelism. The worker cap
comes from ``FRAME_LAB_THREADS``; results are always returned in input
order, which keeps every reduction deterministic.
"""
import os
from concurrent.futures import ThreadPoolExecutor


def worker_count():
    raw = os.environ.get("FRAME_LAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def ordered_map(func, items):
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
