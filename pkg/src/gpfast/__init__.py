"""Fast multivariate-normal tools for Gaussian-process workloads."""

from .errors import (ConditioningWarning, DimensionMismatch, GpFastError, InvalidState,
                     NonFiniteLikelihood, NotEvenlySpaced, NotPositiveDefinite,
                     NumericalError, ShrinkLimitExceeded, SingularMatrix)
from .ess import EssChain, EssConfig, baseline_ess_run, ess_run, ess_step
from .kernels import SeKernelParams, TimeGrid, even_grid, se_covariance, se_covariance_toeplitz
from .linalg import (baseline_invert, baseline_log_det, baseline_sample_eigen, cholesky,
                     invert, log_det)
from .mvn import (LogDensityCache, MvnParams, baseline_log_dmvnorm, build_cache, log_dmvnorm,
                  log_dmvnorm_cached, make_rng, rmvnorm)
from .toeplitz import (DurbinSolution, SymToeplitz, durbin, materialize, toeplitz_log_det,
                       trench_invert)
from .tolerances import TOL

__version__ = "0.1.0"
