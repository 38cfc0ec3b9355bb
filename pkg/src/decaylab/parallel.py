"""Optional thread parallelism for independent parameter sweeps.

All library operations are pure functions over immutable values, so sweeps
may fan out safely.  The DECAYLAB_THREADS environment variable caps the
worker count; unset or 1 means sequential.  Results are always assembled
in input order, so output never depends on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    raw = os.environ.get("DECAYLAB_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"DECAYLAB_THREADS must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"DECAYLAB_THREADS must be >= 1, got {cap}")
    return cap


def ordered_map(fn, items):
    """map(fn, items) with up to thread_cap() workers, preserving order."""
    items = list(items)
    cap = min(thread_cap(), max(len(items), 1))
    if cap == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))
