"""Dense symmetric positive-definite linear algebra.

The fast routines trust their input to be symmetric and positive definite
and go straight to LAPACK (``potrf``/``potri``). The ``baseline_*`` routines
are deliberately naive, structure-blind reference implementations used as
benchmark baselines and as independent oracles in the tests; they share no
code with the fast path.
"""

import numpy as np
from scipy.linalg import lapack, solve_triangular

from .errors import NotPositiveDefinite, SingularMatrix
from .tolerances import TOL

__all__ = [
    "cholesky",
    "invert",
    "log_det",
    "chol_solve",
    "check_sym_pd",
    "baseline_invert",
    "baseline_log_det",
    "baseline_sample_eigen",
]


def _as_square(m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def cholesky(m):
    """Lower Cholesky factor ``L`` with ``L @ L.T == m``.

    Only the lower triangle of `m` is read; symmetry is not checked.

    Raises
    ------
    NotPositiveDefinite
        With ``index`` set to the zero-based order of the first leading minor
        that is not positive definite.
    """
    m = _as_square(m)
    L, info = lapack.dpotrf(m, lower=1, clean=1, overwrite_a=0)
    if info > 0:
        raise NotPositiveDefinite(info - 1)
    if info < 0:  # pragma: no cover - argument error inside LAPACK
        raise ValueError(f"dpotrf: illegal argument {-info}")
    return L


def invert(m):
    """Inverse of a symmetric positive-definite matrix via its Cholesky factor.

    The result is symmetrized (averaged with its transpose) before return.
    """
    L = cholesky(m)
    inv, info = lapack.dpotri(L, lower=1)
    if info != 0:  # pragma: no cover - potrf already succeeded
        raise NotPositiveDefinite(max(info - 1, 0))
    inv = np.tril(inv) + np.tril(inv, -1).T
    return 0.5 * (inv + inv.T)


def log_det(m):
    """``log |m|`` as ``2 * sum(log(diag(L)))``; never forms the determinant."""
    return log_det_from_chol(cholesky(m))


def log_det_from_chol(L):
    return 2.0 * float(np.sum(np.log(np.diagonal(L))))


def chol_solve(L, b):
    """Solve ``L x = b`` for lower-triangular `L`."""
    return solve_triangular(L, b, lower=True, check_finite=False)


def check_sym_pd(m, rtol=1e-12):
    """Debug-only validation: raise unless `m` is symmetric and PD.

    The fast routines never call this.
    """
    m = _as_square(m)
    scale = max(np.max(np.abs(m)), np.finfo(float).tiny)
    asym = np.max(np.abs(m - m.T)) / scale
    if asym > rtol:
        raise ValueError(f"matrix is not symmetric (relative asymmetry {asym:.3g})")
    cholesky(m)
    return m


# -- naive baselines ---------------------------------------------------------


def baseline_invert(m):
    """Gauss-Jordan inverse with partial pivoting.

    Ignores symmetry and definiteness entirely; ``O(n**3)`` with row
    operations on the augmented matrix ``[m | I]``.
    """
    a = _as_square(m)
    n = a.shape[0]
    aug = np.hstack([a, np.eye(n)])
    for k in range(n):
        p = k + int(np.argmax(np.abs(aug[k:, k])))
        if abs(aug[p, k]) < TOL.baseline_pivot:
            raise SingularMatrix(f"pivot {k} has magnitude {abs(aug[p, k]):.3g}")
        if p != k:
            aug[[k, p]] = aug[[p, k]]
        aug[k] /= aug[k, k]
        col = aug[:, k].copy()
        col[k] = 0.0
        aug -= np.outer(col, aug[k])
    return aug[:, n:]


def baseline_log_det(m):
    """Sign and log-magnitude of ``det(m)`` by plain LU elimination.

    Returns ``(sign, logabsdet)`` like :func:`numpy.linalg.slogdet`.
    """
    a = _as_square(m).copy()
    n = a.shape[0]
    sign = 1.0
    logabs = 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = a[p, k]
        if piv == 0.0:
            return 0.0, -np.inf
        if p != k:
            a[[k, p]] = a[[p, k]]
            sign = -sign
        if piv < 0:
            sign = -sign
        logabs += np.log(abs(piv))
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / piv, a[k, k:])
    return sign, logabs


def baseline_sample_eigen(params, count, rng):
    """Draw `count` rows from ``N(mu, cov)`` through an eigendecomposition.

    Mirrors the spectral approach of classic ``mvrnorm``: the covariance is
    decomposed afresh on every call. Only dense covariances are accepted.
    """
    cov = params.cov
    if not isinstance(cov, np.ndarray):
        raise TypeError("baseline_sample_eigen needs a dense covariance matrix")
    mu = np.asarray(params.mu, dtype=float)
    n = mu.shape[0]
    evals, evecs = np.linalg.eigh(cov)
    if evals[0] < -TOL.eigen_clamp:
        raise NotPositiveDefinite(int(np.argmin(evals)),
                                  f"covariance has eigenvalue {evals[0]:.3g}")
    evals = np.clip(evals, 0.0, None)
    z = rng.standard_normal((count, n))
    return mu + (z * np.sqrt(evals)) @ evecs.T
