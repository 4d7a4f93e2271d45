"""Chain summaries used to size Monte Carlo tolerances."""

import numpy as np

__all__ = ["autocorrelation", "effective_sample_size", "mcse_mean"]


def autocorrelation(x):
    """Normalized autocorrelation of a 1-d series, via FFT."""
    x = np.asarray(x, dtype=float)
    n = x.size
    x = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spec = np.fft.rfft(x, size)
    acov = np.fft.irfft(spec * np.conjugate(spec), size)[:n]
    if acov[0] == 0:
        return np.ones(1)
    return acov / acov[0]


def _ess_1d(x):
    n = x.size
    rho = autocorrelation(x)
    if rho.size == 1:
        return float(n)
    # Geyer's initial monotone sequence over paired lags
    m = (n - 1) // 2
    pairs = rho[0:2 * m:2] + rho[1:2 * m + 1:2]
    tau = 0.0
    prev = np.inf
    for p in pairs:
        if p <= 0:
            break
        p = min(p, prev)
        tau += p
        prev = p
    tau = 2.0 * tau - 1.0
    return float(n / max(tau, 1.0 / np.log10(n + 10)))


def effective_sample_size(samples):
    """Per-column effective sample size of a ``(draws, dims)`` chain."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        return _ess_1d(samples)
    return np.array([_ess_1d(samples[:, k]) for k in range(samples.shape[1])])


def mcse_mean(samples):
    """Monte Carlo standard error of the per-column mean."""
    samples = np.asarray(samples, dtype=float)
    return samples.std(axis=0, ddof=1) / np.sqrt(effective_sample_size(samples))
