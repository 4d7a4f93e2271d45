import math

import numpy as np
import pytest

from gpfast import linalg
from gpfast.errors import NotEvenlySpaced
from gpfast.kernels import SeKernelParams, TimeGrid, even_grid, se_covariance, se_covariance_toeplitz
from gpfast.toeplitz import materialize


def test_default_jitter_scales_with_sigma():
    assert SeKernelParams(sigma=3.0).jitter == pytest.approx(9e-8)
    assert SeKernelParams(jitter=0.0).jitter == 0.0


@pytest.mark.parametrize("kwargs", [dict(sigma=0.0), dict(phi=-1.0), dict(jitter=-1e-9)])
def test_params_validated(kwargs):
    with pytest.raises(ValueError):
        SeKernelParams(**kwargs)


class TestTimeGrid:
    def test_must_ascend(self):
        with pytest.raises(ValueError):
            TimeGrid([0.0, 1.0, 1.0])

    def test_even_flag(self):
        assert even_grid(200, 0.0, 2 * math.pi).evenly_spaced
        assert even_grid(7).evenly_spaced
        assert TimeGrid([3.0]).evenly_spaced
        assert not TimeGrid([0.0, 1.0, 3.0]).evenly_spaced


class TestSeCovariance:
    def test_diagonal_is_sigma_squared(self):
        K = se_covariance(TimeGrid([0.0, 0.3, 2.0]), SeKernelParams(2.0, 0.7, 0.0))
        np.testing.assert_array_equal(np.diag(K), 4.0)

    def test_unit_distance(self):
        K = se_covariance(even_grid(2), SeKernelParams(1.0, 1.0, 0.0))
        assert K[0, 1] == pytest.approx(math.exp(-0.5))
        assert K[0, 1] == pytest.approx(0.60653, abs=1e-5)

    def test_uneven_grid_formula(self):
        t = np.array([0.0, 0.4, 1.7, 1.9])
        p = SeKernelParams(1.5, 0.8, 1e-4)
        K = se_covariance(TimeGrid(t), p)
        for i in range(4):
            for j in range(4):
                ref = 1.5**2 * math.exp(-((t[i] - t[j]) ** 2) / (2 * 0.8**2)) + (1e-4 if i == j else 0.0)
                assert K[i, j] == pytest.approx(ref, rel=1e-15)

    def test_n200_jittered_is_pd(self):
        linalg.cholesky(se_covariance(even_grid(200), SeKernelParams(1.0, 1.0, 1e-8)))

    def test_unit_grid_without_jitter_is_pd(self):
        # spacing equal to the length-scale keeps the Gram matrix well conditioned
        linalg.cholesky(se_covariance(even_grid(200), SeKernelParams(1.0, 1.0, 0.0)))

    def test_dense_grid_without_jitter_fails(self):
        grid = even_grid(200, 0.0, 2 * math.pi)
        with pytest.raises(linalg.NotPositiveDefinite):
            linalg.cholesky(se_covariance(grid, SeKernelParams(1.0, 1.0, 0.0)))
        linalg.cholesky(se_covariance(grid, SeKernelParams(1.0, 1.0)))

    @pytest.mark.parametrize("n", [64, 256, 1024])
    def test_pd_with_minimum_jitter(self, n):
        linalg.cholesky(se_covariance(even_grid(n), SeKernelParams(1.0, 1.0, 1e-8)))


class TestSeToeplitz:
    def test_single_point(self):
        t = se_covariance_toeplitz(TimeGrid([5.0]), SeKernelParams(2.0, 1.0, 0.5))
        np.testing.assert_array_equal(t.first_row, [4.5])

    def test_plug_in(self):
        t = se_covariance_toeplitz(even_grid(3), SeKernelParams(1.0, 1.0, 0.0))
        np.testing.assert_allclose(t.first_row, [1.0, math.exp(-0.5), math.exp(-2.0)], rtol=1e-15)

    @pytest.mark.parametrize("grid", [even_grid(50), even_grid(100, 0.0, 2 * math.pi),
                                      even_grid(33, -3.0, 11.5), even_grid(2, 1.0, 1.5)])
    @pytest.mark.parametrize("p", [SeKernelParams(), SeKernelParams(2.5, 0.3, 0.0)])
    def test_matches_dense_exactly(self, grid, p):
        np.testing.assert_array_equal(materialize(se_covariance_toeplitz(grid, p)), se_covariance(grid, p))

    def test_uneven_rejected(self):
        with pytest.raises(NotEvenlySpaced):
            se_covariance_toeplitz(TimeGrid([0.0, 1.0, 3.0]), SeKernelParams())

    def test_monotone_decay(self):
        row = se_covariance_toeplitz(even_grid(40, 0.0, 5.0), SeKernelParams(1.0, 1.0, 0.0)).first_row
        nonzero = row[row > 0]
        assert np.all(np.diff(nonzero) < 0)
