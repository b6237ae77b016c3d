#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List

from ..config import resolve_threads

logger = logging.getLogger(__name__)


def ordered_map(func: Callable, items: Iterable, threads: int = None) -> List:
    """Applies ``func`` to every item using a thread pool, returning results in input order.

    numpy releases the GIL inside FFTs and large vector operations, so threads give real
    parallelism for the sweeps of this package. Reductions over the returned list are done
    by the caller in list order, which keeps results reproducible.

    Args:
        func: function of one argument.
        items: inputs.
        threads: maximum number of workers; resolved through :obj:`dispersive_lab.config.LabSettings` when None.

    Returns:
        list of results, one per item, in the same order.
    """

    items = list(items)
    workers = min(resolve_threads(threads), max(len(items), 1))

    if workers <= 1:
        return [func(item) for item in items]

    logger.debug('mapping %d items over %d threads', len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
