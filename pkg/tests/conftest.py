import numpy as np
import pytest

from gpfast.kernels import SeKernelParams, even_grid, se_covariance_toeplitz

_ACCEPTANCE_LINES = []


def random_spd(rng, n):
    """A^T A + n I with iid standard normal A."""
    a = rng.standard_normal((n, n))
    return a.T @ a + n * np.eye(n)


def se_toeplitz(n, jitter=0.0):
    """SE kernel (sigma = phi = 1) on the unit grid 0..n-1."""
    return se_covariance_toeplitz(even_grid(n), SeKernelParams(1.0, 1.0, jitter))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(label, ok, detail):
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
