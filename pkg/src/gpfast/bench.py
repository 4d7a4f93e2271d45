"""Benchmark harness: fast routines against their naive baselines.

Each timing is the median of `reps` runs after one discarded warm-up run,
measured with :func:`time.perf_counter`.
"""

import csv
import math
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .demo import WarpedSignalModel
from .ess import EssConfig, baseline_ess_run, ess_run
from .kernels import SeKernelParams, even_grid, se_covariance, se_covariance_toeplitz
from .mvn import (MvnParams, baseline_log_dmvnorm, build_cache, log_dmvnorm,
                  log_dmvnorm_cached, make_rng, rmvnorm)
from .toeplitz import trench_invert

__all__ = ["BenchRow", "time_median", "run_bench", "write_bench", "cmd_bench", "BENCH_COLUMNS"]

BENCH_COLUMNS = ["op", "baseline", "n", "reps", "fast_median_s", "base_median_s", "ratio"]

CACHED_EVALS = 1000
SAMPLE_COUNT = 10


@dataclass(frozen=True)
class BenchRow:
    op: str
    baseline: str
    n: int
    reps: int
    fast_median_s: float
    base_median_s: float

    @property
    def ratio(self):
        return self.base_median_s / self.fast_median_s

    def as_csv(self):
        return [self.op, self.baseline, self.n, self.reps, repr(self.fast_median_s),
                repr(self.base_median_s), f"{self.ratio:.3f}"]


def time_median(fn, reps):
    """Median wall time of `fn()` over `reps` runs, after one warm-up call."""
    fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _pairs(n, seed, jitter, ess_iters):
    """Yield ``(op, baseline, fast_fn, base_fn)`` for one matrix size."""
    kernel = SeKernelParams(sigma=1.0, phi=1.0, jitter=None if jitter else 0.0)
    grid = even_grid(n)
    dense = se_covariance(grid, kernel)
    toep = se_covariance_toeplitz(grid, kernel)
    dense_params = MvnParams.zero_mean(dense)
    toep_params = MvnParams.zero_mean(toep)
    x = rmvnorm(dense_params, 1, make_rng(seed))[0]

    yield "invert", "baseline_invert", lambda: linalg.invert(dense), lambda: linalg.baseline_invert(dense)
    yield ("trench_invert", "baseline_invert",
           lambda: trench_invert(toep), lambda: linalg.baseline_invert(dense))
    yield "log_det", "baseline_log_det", lambda: linalg.log_det(dense), lambda: linalg.baseline_log_det(dense)
    yield ("log_dmvnorm[toeplitz]", "baseline_log_dmvnorm",
           lambda: log_dmvnorm(x, toep_params), lambda: baseline_log_dmvnorm(x, dense_params))
    yield ("log_dmvnorm[dense]", "baseline_log_dmvnorm",
           lambda: log_dmvnorm(x, dense_params), lambda: baseline_log_dmvnorm(x, dense_params))

    def cached():
        cache = build_cache(dense)
        for _ in range(CACHED_EVALS):
            log_dmvnorm_cached(x, cache, dense_params.mu)

    def uncached():
        for _ in range(CACHED_EVALS):
            log_dmvnorm(x, dense_params)

    yield f"log_dmvnorm_cached[x{CACHED_EVALS}]", f"log_dmvnorm[x{CACHED_EVALS}]", cached, uncached

    yield ("rmvnorm", "baseline_sample_eigen",
           lambda: rmvnorm(dense_params, SAMPLE_COUNT, make_rng(seed)),
           lambda: linalg.baseline_sample_eigen(dense_params, SAMPLE_COUNT, make_rng(seed)))

    if ess_iters > 0:
        # the warped-signal model, as in the demo
        model = WarpedSignalModel(grid=even_grid(n, 0.0, 2.0 * math.pi))
        prior = model.prior
        rng = make_rng(seed)
        truth = rmvnorm(prior, 1, rng)[0]
        s = model.signal(truth) + model.noise_sd * rng.standard_normal(n)
        loglik = model.loglik(s)
        config = EssConfig(n_iter=ess_iters, prior=prior, seed=seed)
        yield ("ess_run", "baseline_ess_run",
               lambda: ess_run(loglik, config), lambda: baseline_ess_run(loglik, config))


def run_bench(sizes=(200,), reps=5, seed=0, jitter=True, ess_iters=1000, log=None):
    sizes = [int(n) for n in sizes]
    if any(n < 2 for n in sizes):
        raise ValueError("all sizes must be at least 2")
    if reps < 3:
        raise ValueError("reps must be at least 3")
    rows = []
    for n in sizes:
        for op, base, fast_fn, base_fn in _pairs(n, seed, jitter, ess_iters):
            row = BenchRow(op, base, n, reps, time_median(fast_fn, reps), time_median(base_fn, reps))
            if log is not None:
                log(f"{op:>28s} vs {base:<22s} n={n:<5d} x{row.ratio:.3f}")
            rows.append(row)
    return rows


def write_bench(rows, out_path):
    out_path = Path(out_path)
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(row.as_csv() for row in rows)
    return out_path


def cmd_bench(sizes=(200,), reps=5, seed=0, jitter=True, out_path="bench.csv",
              ess_iters=1000, log=None):
    out_path = Path(out_path)
    # fail on an unwritable destination before spending time on timings
    with open(out_path, "a", encoding="utf-8"):
        pass
    rows = run_bench(sizes, reps, seed, jitter, ess_iters, log=log)
    write_bench(rows, out_path)
    return rows
