"""Numerical tolerances shared by the library, its tests and its docs."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # relative to max-abs entry of the input
    cholesky_roundtrip: float = 1e-10
    inverse_identity: float = 1e-8
    log_det_vs_lu: float = 1e-8
    baseline_pivot: float = 1e-12
    eigen_clamp: float = 1e-10
    toeplitz_inverse_identity: float = 1e-7
    toeplitz_log_det_rel: float = 1e-8
    toeplitz_scaling_rel: float = 1e-12
    # beta_k below this times r0 triggers ConditioningWarning
    toeplitz_near_singular: float = 1e-14
    even_spacing_rel: float = 1e-12
    density_vs_baseline: float = 1e-9
    density_paths: float = 1e-8
    max_shrinks: int = 10_000


TOL = Tolerances()
