"""System configuration, per-trial random streams and channel draws."""
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfig

# Purpose tags for per-trial substreams.
TAG_CHANNEL = 0
TAG_CODEBOOK = 1
TAG_TARGET = 2
TAG_WISHART = 3

CELLS = 2


class RegimeWarning(UserWarning):
    """Configuration lies outside K < n_r < 2K."""


@dataclass(frozen=True)
class SystemConfig:
    n_t: int
    n_r: int
    k_users: int
    b_bits: int
    cells: int = CELLS

    def __post_init__(self):
        for name in ("n_t", "n_r", "k_users", "b_bits"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise InvalidConfig(f"{name} must be a positive integer, got {value!r}")
        if self.cells != CELLS:
            raise InvalidConfig("only two-cell systems are supported")
        if not self.in_default_regime:
            warnings.warn(
                f"n_r={self.n_r}, K={self.k_users} is outside K < n_r < 2K",
                RegimeWarning,
                stacklevel=3,
            )

    @property
    def in_default_regime(self):
        return self.k_users < self.n_r < 2 * self.k_users

    @property
    def codebook_size(self):
        return 2 ** self.b_bits

    @property
    def compound_size(self):
        return 2 ** (self.k_users * self.b_bits)

    @property
    def feedback_bits_per_cell(self):
        return self.k_users * self.b_bits


def substream(seed, trial, tag, attempt=0):
    """
    Generator for one (seed, trial, attempt, purpose) combination.

    The state is a hash of the full key, so streams for different trials are
    independent of the order in which trials are evaluated.
    """
    if seed < 0 or trial < 0 or attempt < 0:
        raise InvalidConfig("seed, trial and attempt must be non-negative")
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial), int(attempt), int(tag)))
    return np.random.Generator(np.random.PCG64(ss))


def complex_normal(rng, shape):
    """CN(0, 1) samples: independent real and imaginary parts of variance 1/2."""
    x = rng.standard_normal(tuple(shape) + (2,))
    return (x[..., 0] + 1j * x[..., 1]) / np.sqrt(2.0)


@dataclass(frozen=True)
class ChannelSet:
    """
    Channel matrices of one trial.

    ``direct[i, k]`` is H_{i,k}, from user k of cell i to its own base
    station; ``cross[i, k]`` is G_{i,k}, from the same user to the other
    base station. Both arrays have shape ``(2, K, n_r, n_t)``.
    """
    direct: np.ndarray
    cross: np.ndarray

    def interferers_at(self, cell):
        """Cross channels of the neighbour-cell users as seen by ``cell``'s BS."""
        return self.cross[1 - cell]


def sample_channels(cfg, seed, trial, attempt=0):
    rng = substream(seed, trial, TAG_CHANNEL, attempt)
    # Drawn as (.., n_t, n_r) and transposed: column-major fill per matrix.
    g = complex_normal(rng, (2, cfg.cells, cfg.k_users, cfg.n_t, cfg.n_r))
    g = np.swapaxes(g, -1, -2)
    return ChannelSet(direct=np.ascontiguousarray(g[0]), cross=np.ascontiguousarray(g[1]))
