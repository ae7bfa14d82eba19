"""
Parallel Processing Utilities
============================

Fan-out helpers for the check suites. Results always come back in input
order, so seeded runs stay reproducible however many workers are used.
"""

import multiprocessing
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial


def get_optimal_workers():
    """
    Determine the optimal number of worker processes based on CPU cores.

    Returns:
        int: cores-1, minimum 1
    """
    n_cores = multiprocessing.cpu_count()
    return max(1, n_cores - 1)


def process_in_parallel(func, item_list, n_workers=None, use_threads=False, *args, **kwargs):
    """
    Apply func to every item, in parallel when more than one worker is used.

    Args:
        func: Picklable function (module level) when processes are used
        item_list: Items to process
        n_workers: Number of workers; None picks get_optimal_workers(),
            1 runs serially in the calling process
        use_threads: Use a ThreadPoolExecutor instead of a ProcessPoolExecutor
        *args, **kwargs: Extra arguments bound to func

    Returns:
        list: func(item) for each item, in input order
    """
    if n_workers is None:
        n_workers = get_optimal_workers()

    if args or kwargs:
        func = partial(func, *args, **kwargs)

    items = list(item_list)
    if n_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    executor_cls = ThreadPoolExecutor if use_threads else ProcessPoolExecutor
    with executor_cls(max_workers=n_workers) as executor:
        results = list(executor.map(func, items))

    return results


def batch_items(items, n_batches=None, batch_size=None):
    """
    Split a list of items into batches for parallel processing.

    Either n_batches or batch_size may be provided; with neither, one batch
    per worker is created.

    Returns:
        list: Consecutive slices of items
    """
    n_items = len(items)

    if batch_size is not None:
        return [items[i : i + batch_size] for i in range(0, n_items, batch_size)]
    if n_batches is not None:
        batch_size = max(1, -(-n_items // n_batches))
        return [items[i : i + batch_size] for i in range(0, n_items, batch_size)]
    return batch_items(items, n_batches=get_optimal_workers())
