"""Elliptical slice sampling for posteriors with a multivariate normal prior.

Random draws are consumed in a fixed order on every step: the auxiliary
prior draw ``nu``, the slice uniform, the initial angle, then one uniform
per bracket shrink.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvalidState, NonFiniteLikelihood, ShrinkLimitExceeded
from .mvn import MvnParams, dense_cov, make_rng, sample_with_chol
from .tolerances import TOL

__all__ = ["EssConfig", "EssChain", "ess_step", "ess_run", "baseline_ess_run"]

TWO_PI = 2.0 * math.pi


@dataclass
class EssConfig:
    """Chain settings.

    ``initial=None`` starts from a single prior draw taken from the chain's
    own generator before the first step.
    """

    n_iter: int
    prior: MvnParams
    seed: "int | np.random.SeedSequence" = 0
    burn_in: int = 0
    initial: np.ndarray | None = None

    def __post_init__(self):
        if self.n_iter < 1:
            raise ValueError("n_iter must be positive")
        if not 0 <= self.burn_in < self.n_iter:
            raise ValueError("burn_in must satisfy 0 <= burn_in < n_iter")
        if self.initial is not None:
            self.initial = np.array(self.initial, dtype=float).reshape(-1)
            if self.initial.shape != (self.prior.n,):
                raise ValueError(f"initial state must have length {self.prior.n}")


@dataclass
class EssChain:
    samples: np.ndarray
    """Retained states, one per row (``n_iter - burn_in`` rows)."""
    loglik_trace: np.ndarray
    """Log-likelihood of the state after every iteration, burn-in included."""
    shrink_counts: np.ndarray
    slice_levels: np.ndarray
    """Slice threshold ``log y`` drawn at every iteration."""
    seed: object = None
    burn_in: int = 0

    @property
    def retained_loglik(self):
        return self.loglik_trace[self.burn_in:]


def _checked(ll):
    ll = float(ll)
    if math.isnan(ll) or ll == math.inf:
        raise NonFiniteLikelihood(f"log-likelihood returned {ll}")
    return ll


def _slice_step(f, cur_ll, nu, loglik, mu, rng):
    """One elliptical slice move given the auxiliary prior draw `nu` (centered)."""
    log_y = cur_ll + math.log(1.0 - rng.random())
    theta = rng.uniform(0.0, TWO_PI)
    lo, hi = theta - TWO_PI, theta
    centred = f - mu
    shrinks = 0
    while True:
        f_new = centred * math.cos(theta) + nu * math.sin(theta) + mu
        ll_new = _checked(loglik(f_new))
        if ll_new > log_y:
            return f_new, ll_new, shrinks, log_y
        if theta < 0.0:
            lo = theta
        else:
            hi = theta
        shrinks += 1
        if shrinks > TOL.max_shrinks:
            raise ShrinkLimitExceeded(
                f"bracket shrank {shrinks} times; the log-likelihood is probably broken")
        theta = rng.uniform(lo, hi)


def _initial_loglik(f, loglik):
    ll = _checked(loglik(f))
    if ll == -math.inf:
        raise InvalidState("log-likelihood of the current state is -inf")
    return ll


def ess_step(f, loglik, prior, rng, *, cur_loglik=None, chol=None):
    """Single elliptical slice sampling transition.

    Parameters
    ----------
    f : (n,) array
        Current state; must have finite log-likelihood.
    loglik : callable
        Maps an ``(n,)`` array to a log-likelihood (finite or ``-inf``).
    prior : MvnParams
        Gaussian prior.
    rng : numpy.random.Generator
    cur_loglik : float, optional
        ``loglik(f)`` if already known.
    chol : (n, n) array, optional
        Cholesky factor of the prior covariance, to avoid refactoring.

    Returns
    -------
    f_new, loglik_new, shrinks
    """
    f = np.asarray(f, dtype=float)
    if cur_loglik is None:
        cur_loglik = _initial_loglik(f, loglik)
    elif cur_loglik == -math.inf:
        raise InvalidState("log-likelihood of the current state is -inf")
    if chol is None:
        chol = linalg.cholesky(dense_cov(prior.cov))
    nu = sample_with_chol(np.zeros(prior.n), chol, 1, rng)[0]
    f_new, ll_new, shrinks, _ = _slice_step(f, cur_loglik, nu, loglik, prior.mu, rng)
    return f_new, ll_new, shrinks


def _run(loglik, config, draw_nu):
    rng = make_rng(config.seed)
    prior = config.prior
    n = prior.n
    if config.initial is None:
        f = prior.mu + draw_nu(rng)
    else:
        f = config.initial.copy()
    ll = _initial_loglik(f, loglik)

    kept = config.n_iter - config.burn_in
    samples = np.empty((kept, n))
    trace = np.empty(config.n_iter)
    shrinks = np.empty(config.n_iter, dtype=np.int64)
    levels = np.empty(config.n_iter)
    for it in range(config.n_iter):
        nu = draw_nu(rng)
        f, ll, shrinks[it], levels[it] = _slice_step(f, ll, nu, loglik, prior.mu, rng)
        trace[it] = ll
        if it >= config.burn_in:
            samples[it - config.burn_in] = f
    return EssChain(samples=samples, loglik_trace=trace, shrink_counts=shrinks,
                    slice_levels=levels, seed=config.seed, burn_in=config.burn_in)


def ess_run(loglik, config):
    """Run an elliptical slice sampling chain.

    The prior covariance is factored once and reused for every auxiliary
    draw.
    """
    L = linalg.cholesky(dense_cov(config.prior.cov))
    zero = np.zeros(config.prior.n)

    def draw_nu(rng):
        return sample_with_chol(zero, L, 1, rng)[0]

    return _run(loglik, config, draw_nu)


def baseline_ess_run(loglik, config):
    """Same chain as :func:`ess_run`, with naive prior draws.

    Every auxiliary draw eigendecomposes the prior covariance from scratch.
    """
    centred = MvnParams.zero_mean(dense_cov(config.prior.cov))

    def draw_nu(rng):
        return linalg.baseline_sample_eigen(centred, 1, rng)[0]

    return _run(loglik, config, draw_nu)
