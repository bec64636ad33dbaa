"""
Analytical side: the Wishart-based throughput-loss bound and the cost model
of the joint search.

The expected minimum of the residual-interference objective over the
compound codebook is replaced by the expected minimum over 2**(K*B) i.i.d.
complex central Wishart matrices CW_{n_r}(K, I), which is estimated by
Monte Carlo.
"""
from dataclasses import dataclass

import numpy as np

from .channel import TAG_WISHART, complex_normal, substream
from .errors import BudgetExceeded, InvalidConfig
from .rxdesign import rho_k_batch

DEFAULT_DRAW_CAP = 10 ** 9
_DRAW_CHUNK = 1 << 14


@dataclass(frozen=True)
class WishartSpec:
    dim: int            # n_r
    dof: int            # K
    draws_per_min: int  # 2**(K*B)
    trials: int

    def __post_init__(self):
        if min(self.dim, self.dof, self.draws_per_min, self.trials) < 1:
            raise InvalidConfig(f"invalid Wishart spec {self}")


@dataclass(frozen=True)
class Estimate:
    mean: float
    std_err: float


def wishart_spec_for(cfg, trials):
    """Estimator setup for a system; only defined for n_t == n_r."""
    if cfg.n_t != cfg.n_r:
        raise InvalidConfig("the Wishart bound assumes n_t == n_r")
    return WishartSpec(dim=cfg.n_r, dof=cfg.k_users,
                       draws_per_min=cfg.compound_size, trials=trials)


def sample_wishart(spec, rng, size=None):
    """``X X^H`` with X an n_r x K matrix of CN(0, 1) entries (stacked if ``size``)."""
    lead = () if size is None else (size,)
    X = complex_normal(rng, lead + (spec.dim, spec.dof))
    return X @ np.swapaxes(X, -1, -2).conj()


def _trial_minima(spec, seed, trial, pool_sizes):
    # Draws come off one stream in order, so a smaller pool is a prefix of a larger one.
    rng = substream(seed, trial, TAG_WISHART)
    pool_sizes = sorted(pool_sizes)
    out = {}
    best = np.inf
    done = 0
    for size in pool_sizes:
        while done < size:
            n = min(_DRAW_CHUNK, size - done)
            rho = rho_k_batch(sample_wishart(spec, rng, n), spec.dof)
            best = min(best, float(rho.min()))
            done += n
        out[size] = best
    return out


def nested_minima(spec, seed, pool_sizes, draw_cap=DEFAULT_DRAW_CAP):
    """
    Per-trial minima of the objective for several pool sizes.

    Each trial draws one sequence of Wishart matrices and the minimum for a
    pool of size p is taken over its first p entries, so for every trial the
    minimum is non-increasing in p by construction.

    Returns
    -------
    dict
        pool size -> array of shape ``(trials,)``.
    """
    pool_sizes = sorted(set(int(p) for p in pool_sizes))
    _check_budget(max(pool_sizes), spec.trials, draw_cap)
    rows = [_trial_minima(spec, seed, t, pool_sizes) for t in range(spec.trials)]
    return {p: np.array([r[p] for r in rows]) for p in pool_sizes}


def min_rho_expectation(spec, seed, draw_cap=DEFAULT_DRAW_CAP):
    """Monte Carlo estimate of E[min over the pool of rho_K(A)] with its standard error."""
    minima = nested_minima(spec, seed, [spec.draws_per_min], draw_cap)[spec.draws_per_min]
    return summarize(minima)


def _check_budget(draws, trials, cap):
    if draws * trials > cap:
        raise BudgetExceeded(f"{draws} draws x {trials} trials exceeds cap {cap}")


def summarize(samples):
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 2:
        return Estimate(float(samples.mean()), 0.0)
    return Estimate(float(samples.mean()), float(samples.std(ddof=1) / np.sqrt(len(samples))))


def loss_upper_bound(snr_linear, emin):
    """Upper bound on the mean per-user throughput loss, in bits."""
    if np.any(np.asarray(emin) < 0):
        raise ValueError("emin must be non-negative")
    return np.log2(1.0 + np.asarray(snr_linear, dtype=float) * emin)


def rate_lower_bound(mean_pfb_rate, snr_linear, emin):
    return mean_pfb_rate - loss_upper_bound(snr_linear, emin)


def loss_bound_std_err(snr_linear, emin, emin_std_err):
    """First-order propagation of the estimator's standard error through the log."""
    snr = np.asarray(snr_linear, dtype=float)
    return snr * emin_std_err / ((1.0 + snr * emin) * np.log(2.0))


def flop_estimate(cfg):
    """Dominant-term flop count of the exhaustive joint search for one cell."""
    k = cfg.k_users
    return cfg.compound_size * cfg.n_r * k * (3 * cfg.n_t + k - 1)
