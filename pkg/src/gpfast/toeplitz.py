"""O(n^2) routines for symmetric positive-definite Toeplitz matrices.

A symmetric Toeplitz matrix is stored as its first row ``r``, with entry
``(i, j) == r[|i - j|]``. Everything here works on the normalized row
``rho = r / r[0]`` and rescales at the end.
"""

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConditioningWarning, NotPositiveDefinite
from .tolerances import TOL

__all__ = [
    "SymToeplitz",
    "DurbinSolution",
    "durbin",
    "trench_invert",
    "toeplitz_log_det",
    "materialize",
]


@dataclass(frozen=True, eq=False)
class SymToeplitz:
    """Symmetric Toeplitz matrix given by its first row."""

    first_row: np.ndarray

    def __post_init__(self):
        r = np.array(self.first_row, dtype=float).reshape(-1)
        if r.size < 1:
            raise ValueError("first_row must be non-empty")
        if not r[0] > 0:
            raise ValueError(f"first_row[0] must be positive, got {r[0]}")
        r.setflags(write=False)
        object.__setattr__(self, "first_row", r)

    @property
    def n(self):
        return self.first_row.size

    def __mul__(self, c):
        return SymToeplitz(self.first_row * c)

    __rmul__ = __mul__


class DurbinSolution(NamedTuple):
    y: np.ndarray
    """Solution of the normalized Yule-Walker system (length ``n - 1``)."""
    betas: np.ndarray
    """Prediction-error variances ``beta_0 .. beta_{n-1}``, scaled so ``beta_0 == r0``."""


def _durbin_normalized(rho):
    """Durbin recursion on a unit-diagonal row ``rho``.

    Returns ``y`` solving ``T(rho[:-1]) y = -rho[1:]`` and the normalized
    error variances (``betas[0] == 1``).
    """
    n = rho.size
    m = n - 1
    betas = np.empty(n)
    betas[0] = 1.0
    y = np.empty(m)
    if m == 0:
        return y, betas
    r = rho[1:]
    alpha = -r[0]
    if abs(alpha) >= 1.0:
        raise NotPositiveDefinite(1)
    y[0] = alpha
    beta = 1.0 - alpha * alpha
    betas[1] = beta
    for k in range(1, m):
        # r[k-1::-1] is r[k-1], ..., r[0]
        alpha = -(r[k] + np.dot(r[k - 1::-1], y[:k])) / beta
        if not abs(alpha) < 1.0:
            raise NotPositiveDefinite(k + 1)
        y[:k] = y[:k] + alpha * y[k - 1::-1]
        y[k] = alpha
        beta *= 1.0 - alpha * alpha
        betas[k + 1] = beta
    return y, betas


def _warn_if_near_singular(betas):
    if betas.size and betas.min() < TOL.toeplitz_near_singular:
        warnings.warn(
            f"Toeplitz matrix is near singular (min normalized beta {betas.min():.3g})",
            ConditioningWarning,
            stacklevel=3,
        )


def durbin(t):
    """Solve the normalized Yule-Walker system of `t` in ``O(n^2)``.

    Raises
    ------
    NotPositiveDefinite
        If a reflection coefficient reaches magnitude 1; ``index`` is its
        order ``k`` (1-based, as ``beta_k`` would be the first non-positive
        variance).
    """
    r0 = t.first_row[0]
    y, betas = _durbin_normalized(t.first_row / r0)
    _warn_if_near_singular(betas)
    return DurbinSolution(y=y, betas=betas * r0)


def trench_invert(t):
    """Dense inverse of a symmetric PD Toeplitz matrix in ``O(n^2)``.

    Trench's algorithm: the first row of the inverse comes from the Durbin
    solution, then each later row of the upper wedge
    (``i <= j <= n-1-i``) follows from the row above it. Every other entry
    is a copy made by persymmetry or symmetry, so the result is exactly
    symmetric and exactly persymmetric.
    """
    n = t.n
    r0 = t.first_row[0]
    if n == 1:
        return np.array([[1.0 / r0]])
    rho = t.first_row / r0
    y, betas = _durbin_normalized(rho)
    _warn_if_near_singular(betas)
    gamma = 1.0 / (1.0 + np.dot(rho[1:], y))
    v = gamma * y[::-1]

    B = np.empty((n, n))
    row = np.empty(n)
    row[0] = gamma
    row[1:] = v[::-1]
    B[0] = row / r0
    B[n - 1] = B[0, ::-1]
    for i in range(1, (n - 1) // 2 + 1):
        # row i over columns i..n-1-i, from row i-1 over columns i-1..n-2-i
        row = row[:-2] + (
            v[i:n - i][::-1] * v[n - 1 - i] - v[i - 1] * v[i - 1:n - 1 - i]
        ) / gamma
        seg = row / r0
        B[i, i:n - i] = seg
        B[n - 1 - i, i:n - i] = seg[::-1]
    _reflect_side_wedges(B)
    return B


_TILE = 64


def _reflect_side_wedges(B):
    """Copy the top/bottom wedges onto the left/right ones by symmetry.

    Entry ``(a, b)`` belongs to a side wedge when ``a`` is further from the
    nearest edge than ``b``. The transpose is done tile by tile; a plain
    strided copy is several times slower once the matrix leaves cache.
    """
    n = B.shape[0]
    k = np.arange(n)
    depth = np.minimum(k, n - 1 - k)
    for a in range(0, n, _TILE):
        da = depth[a:a + _TILE]
        for b in range(0, n, _TILE):
            db = depth[b:b + _TILE]
            if da.max() <= db.min():
                continue
            src = B[b:b + _TILE, a:a + _TILE].T
            if da.min() > db.max():
                B[a:a + _TILE, b:b + _TILE] = src
            else:
                np.copyto(B[a:a + _TILE, b:b + _TILE], src, where=da[:, None] > db[None, :])


def toeplitz_log_det(t):
    """``log |T|`` as the sum of the Durbin error-variance logs."""
    r0 = t.first_row[0]
    _, betas = _durbin_normalized(t.first_row / r0)
    _warn_if_near_singular(betas)
    return float(np.sum(np.log(betas)) + t.n * np.log(r0))


def materialize(t):
    """Dense ``n x n`` matrix with entry ``(i, j) = r[|i - j|]``."""
    r = t.first_row
    idx = np.arange(t.n)
    return r[np.abs(idx[:, None] - idx[None, :])]
