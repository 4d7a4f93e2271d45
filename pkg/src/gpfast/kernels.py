"""Squared-exponential covariances on time grids."""

from dataclasses import dataclass

import numpy as np

from .errors import NotEvenlySpaced
from .toeplitz import SymToeplitz
from .tolerances import TOL

__all__ = [
    "SeKernelParams",
    "TimeGrid",
    "even_grid",
    "se_kernel",
    "se_covariance",
    "se_covariance_toeplitz",
]


@dataclass(frozen=True)
class SeKernelParams:
    """Amplitude `sigma`, length-scale `phi` and diagonal `jitter`.

    ``jitter=None`` means the default of ``1e-8 * sigma**2``.
    """

    sigma: float = 1.0
    phi: float = 1.0
    jitter: float | None = None

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if not self.phi > 0:
            raise ValueError("phi must be positive")
        if self.jitter is None:
            object.__setattr__(self, "jitter", 1e-8 * self.sigma**2)
        elif not self.jitter >= 0:
            raise ValueError("jitter must be non-negative")


@dataclass(frozen=True, eq=False)
class TimeGrid:
    points: np.ndarray

    def __post_init__(self):
        t = np.array(self.points, dtype=float).reshape(-1)
        if t.size < 1:
            raise ValueError("grid must contain at least one point")
        if np.any(np.diff(t) <= 0):
            raise ValueError("grid points must be strictly ascending")
        t.setflags(write=False)
        object.__setattr__(self, "points", t)

    @property
    def n(self):
        return self.points.size

    @property
    def spacing(self):
        """Mean gap; the lattice step when the grid is evenly spaced."""
        if self.n == 1:
            return 0.0
        return (self.points[-1] - self.points[0]) / (self.n - 1)

    @property
    def evenly_spaced(self):
        if self.n <= 2:
            return True
        gaps = np.diff(self.points)
        return bool(np.all(np.abs(gaps - self.spacing) <= TOL.even_spacing_rel * self.spacing))


def even_grid(n, start=0.0, stop=None):
    """`n` evenly spaced points from `start`; unit spacing if `stop` is None."""
    if stop is None:
        return TimeGrid(start + np.arange(n, dtype=float))
    return TimeGrid(np.linspace(start, stop, n))


def se_kernel(d, p):
    """Squared-exponential kernel as a function of distance `d`."""
    d = np.asarray(d, dtype=float)
    return p.sigma**2 * np.exp(-(d * d) / (2.0 * p.phi**2))


def _lattice_distances(grid):
    return np.arange(grid.n) * grid.spacing


def se_covariance(grid, p):
    """Dense covariance ``sigma^2 exp(-(ti-tj)^2 / (2 phi^2)) + jitter * I``.

    On evenly spaced grids distances are taken as ``|i - j| * spacing`` so
    the dense and Toeplitz forms agree bit for bit.
    """
    idx = np.arange(grid.n)
    if grid.evenly_spaced:
        row = se_kernel(_lattice_distances(grid), p)
        K = row[np.abs(idx[:, None] - idx[None, :])]
    else:
        t = grid.points
        K = se_kernel(t[:, None] - t[None, :], p)
    K[idx, idx] += p.jitter
    return K


def se_covariance_toeplitz(grid, p):
    """First-row representation of :func:`se_covariance` on an even grid."""
    if not grid.evenly_spaced:
        raise NotEvenlySpaced("Toeplitz covariance needs an evenly spaced grid")
    row = se_kernel(_lattice_distances(grid), p)
    row[0] += p.jitter
    return SymToeplitz(row)
