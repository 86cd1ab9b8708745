"""Multiprocessing helpers for parameter sweeps"""
from concurrent.futures import ProcessPoolExecutor

from tqdm import tqdm


def mp_wrapper(fn, fn_args, workers, desc=None):
    """Evaluate fn over argument tuples, in parallel if workers > 1

    Results come back in the order of fn_args whatever the scheduling, so
    output assembled from them doesn't depend on the worker count.

    :param function fn: picklable module-level function
    :param list of tuple fn_args: list with tuples of function arguments
    :param int workers: max number of workers
    :param str/None desc: progress bar label, no bar if None
    :return: list of returned values of fn
    """
    fn_args = list(fn_args)
    if len(fn_args) == 0:
        return []
    if workers <= 1 or len(fn_args) == 1:
        iterator = fn_args
        if desc is not None:
            iterator = tqdm(fn_args, desc=desc, leave=False)
        return [fn(*args) for args in iterator]
    with ProcessPoolExecutor(min(workers, len(fn_args))) as ex:
        # can't use map directly as it works only with single arg functions
        res = ex.map(fn, *zip(*fn_args))
        if desc is not None:
            res = tqdm(res, total=len(fn_args), desc=desc, leave=False)
        res = list(res)
    return res
