import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    """Number of worker threads; ``FC_LAB_THREADS`` caps the CPU count."""
    n = os.cpu_count() or 1
    cap = os.environ.get("FC_LAB_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"FC_LAB_THREADS must be an integer, got {cap!r}") from None
    return n


def ordered_map(fn, items, workers=None):
    """``list(map(fn, items))``, possibly on threads; result order is input order."""
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
