"""Multivariate normal sampling and log-density.

Covariances come in two flavours: a dense ``(n, n)`` array, or a
:class:`~gpfast.toeplitz.SymToeplitz`. Random numbers are drawn from a
:class:`numpy.random.Generator` passed in explicitly.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, SingularMatrix
from .toeplitz import SymToeplitz, materialize, toeplitz_log_det, trench_invert

__all__ = [
    "MvnParams",
    "LogDensityCache",
    "make_rng",
    "dense_cov",
    "rmvnorm",
    "build_cache",
    "log_dmvnorm",
    "log_dmvnorm_cached",
    "baseline_log_dmvnorm",
]

LOG_2PI = float(np.log(2.0 * np.pi))

RngState = np.random.Generator


def make_rng(seed):
    """Deterministic PCG64 generator; same seed gives the same stream."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True, eq=False)
class MvnParams:
    mu: np.ndarray
    cov: "np.ndarray | SymToeplitz"

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float).reshape(-1)
        cov = self.cov
        if isinstance(cov, SymToeplitz):
            n = cov.n
        else:
            cov = np.asarray(cov, dtype=float)
            if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
                raise DimensionMismatch(f"covariance must be square, got {cov.shape}")
            n = cov.shape[0]
        if mu.shape[0] != n:
            raise DimensionMismatch(f"mean has length {mu.shape[0]}, covariance is {n}x{n}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "cov", cov)

    @property
    def n(self):
        return self.mu.shape[0]

    @property
    def is_toeplitz(self):
        return isinstance(self.cov, SymToeplitz)

    @classmethod
    def zero_mean(cls, cov):
        n = cov.n if isinstance(cov, SymToeplitz) else np.shape(cov)[0]
        return cls(np.zeros(n), cov)


def dense_cov(cov):
    return materialize(cov) if isinstance(cov, SymToeplitz) else cov


def rmvnorm(params, count, rng):
    """Draw `count` rows ``mu + L z`` with ``L`` the Cholesky factor of the covariance.

    Toeplitz covariances are materialized and factored densely. The factor
    is computed once per call.
    """
    L = linalg.cholesky(dense_cov(params.cov))
    return sample_with_chol(params.mu, L, count, rng)


def sample_with_chol(mu, L, count, rng):
    z = rng.standard_normal((count, mu.shape[0]))
    return mu + z @ L.T


def _cov_key(cov):
    h = hashlib.sha1()
    if isinstance(cov, SymToeplitz):
        h.update(b"toeplitz")
        h.update(cov.first_row.tobytes())
    else:
        h.update(b"dense")
        h.update(np.ascontiguousarray(cov).tobytes())
    return h.hexdigest()


@dataclass(frozen=True, eq=False)
class LogDensityCache:
    """Factorization of one covariance, reusable across density evaluations.

    Dense covariances keep their Cholesky factor ``chol``; Toeplitz ones keep
    the Trench inverse ``inverse``. ``key`` is a digest of the covariance the
    cache was built from.
    """

    n: int
    log_det: float
    key: str
    chol: np.ndarray | None = None
    inverse: np.ndarray | None = None

    def matches(self, cov):
        return self.key == _cov_key(cov)


def build_cache(cov):
    if isinstance(cov, SymToeplitz):
        return LogDensityCache(n=cov.n, log_det=toeplitz_log_det(cov), key=_cov_key(cov),
                               inverse=trench_invert(cov))
    L = linalg.cholesky(cov)
    return LogDensityCache(n=L.shape[0], log_det=linalg.log_det_from_chol(L),
                           key=_cov_key(cov), chol=L)


def log_dmvnorm_cached(x, cache, mu):
    """Log-density at `x` reusing a prebuilt :class:`LogDensityCache`."""
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if x.shape != (cache.n,) or mu.shape != (cache.n,):
        raise DimensionMismatch(
            f"x {x.shape} and mu {mu.shape} must both have shape ({cache.n},)")
    d = x - mu
    if cache.chol is not None:
        z = linalg.chol_solve(cache.chol, d)
        q = float(np.dot(z, z))
    else:
        q = float(d @ cache.inverse @ d)
    return -0.5 * (cache.n * LOG_2PI + cache.log_det + q)


def log_dmvnorm(x, params):
    """Log-density of ``N(mu, cov)`` at `x`.

    Dense covariances use a Cholesky factor and a triangular solve for the
    quadratic form. Toeplitz covariances use the Durbin log-determinant and
    the Trench inverse.
    """
    return log_dmvnorm_cached(x, build_cache(params.cov), params.mu)


def baseline_log_dmvnorm(x, params):
    """Log-density the slow way: Gauss-Jordan inverse and LU determinant on every call."""
    x = np.asarray(x, dtype=float)
    if x.shape != (params.n,):
        raise DimensionMismatch(f"x has shape {x.shape}, expected ({params.n},)")
    cov = dense_cov(params.cov)
    inv = linalg.baseline_invert(cov)
    sign, logabs = linalg.baseline_log_det(cov)
    if sign <= 0:
        raise SingularMatrix("covariance determinant is not positive")
    d = x - params.mu
    q = float(d @ inv @ d)
    return -0.5 * (params.n * LOG_2PI + logabs + q)
