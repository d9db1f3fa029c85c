import multiprocessing

import numpy as np


class Welford:
    """
    Streaming mean and variance. Accepts single observations or whole
    batches, so per-trial counters (rho iterations, bench timings) never
    need to be kept around.
    """

    def __init__(self):
        self._mean = None
        self._M = None
        self._n = 0


    def update(self, data):
        data = np.atleast_1d(np.asanyarray(data, dtype=np.float64))

        n_b = data.size
        if n_b == 0:
            return
        n_ab = self._n + n_b

        mean_b = data.mean()
        M_b = np.sum((data - mean_b)**2)

        if self._mean is None:
            self._mean, self._M = mean_b, M_b
        else:
            delta = mean_b - self._mean
            self._mean += delta * n_b / n_ab
            self._M += M_b + delta**2 * self._n * n_b / n_ab

        self._n = n_ab


    @property
    def var(self):
        assert self._mean is not None
        return self._M / self._n


    @property
    def std(self):
        return float(np.sqrt(self.var))


    @property
    def mean(self):
        assert self._mean is not None
        return float(self._mean)


    @property
    def n(self):
        return self._n


def default_workers(jobs):
    return max(1, min(jobs, multiprocessing.cpu_count()))


def pool_map(fn, arglist, workers=None, timeout=None):
    """
    Runs fn(*args) for each entry of `arglist` and returns the results in
    input order. With a single worker everything runs in-process.

    Raises multiprocessing.TimeoutError if a job exceeds `timeout` seconds.
    """
    arglist = list(arglist)
    workers = workers or default_workers(len(arglist))
    if workers == 1 or len(arglist) <= 1:
        return [fn(*args) for args in arglist]

    with multiprocessing.Pool(workers) as pool:
        results = [pool.apply_async(fn, args) for args in arglist]

        for res in results:
            res.wait(timeout)

        # get() re-raises exceptions from the workers
        return [res.get(0 if timeout else None) for res in results]
