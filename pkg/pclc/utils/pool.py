#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Thread pools capped by the `PCLC_THREADS` environment variable.
"""

from __future__ import annotations
import os
from pclc.utils.typing import Optional, Callable, List, Any, Iterable


def get_worker_count(workers: Optional[int] = None) -> int:
    """
    Resolve the number of worker threads.

    An explicit `workers` wins, then `PCLC_THREADS`, then `system:threads` from the config,
    then the CPU count. The environment variable is always an upper bound.
    """
    from multiprocessing import cpu_count
    from pclc.config.static import STATIC_CONFIG
    from pclc.config import get_config
    env_var = STATIC_CONFIG['environment']['threads']
    cap = None
    if os.environ.get(env_var, '').strip():
        try:
            cap = max(1, int(os.environ[env_var]))
        except ValueError:
            from pclc.utils.warnings import warn
            warn(f"Ignoring non-integer {env_var}={os.environ[env_var]!r}.", stack=False)

    if workers is None:
        workers = get_config('system', 'threads', warn=False)
    if workers is None:
        workers = cap if cap is not None else cpu_count()
    workers = max(1, int(workers))
    return min(workers, cap) if cap is not None else workers


def get_pool_executor(workers: Optional[int] = None):
    """ Return a new `ThreadPoolExecutor`. """
    from concurrent.futures import ThreadPoolExecutor
    return ThreadPoolExecutor(max_workers=get_worker_count(workers))


def parallel_map(
        func: Callable[[Any], Any],
        items: Iterable[Any],
        workers: Optional[int] = None,
    ) -> List[Any]:
    """
    Map `func` over `items` on a thread pool and return results in input order.
    Runs inline when only one worker is available.
    """
    items = list(items)
    if get_worker_count(workers) == 1 or len(items) < 2:
        return [func(item) for item in items]
    with get_pool_executor(workers) as executor:
        return list(executor.map(func, items))
