"""Random vector quantization codebooks and the compound-codeword view."""
from dataclasses import dataclass

import numpy as np

from .channel import TAG_CODEBOOK, complex_normal, substream
from .errors import IndexOutOfRange


@dataclass(frozen=True)
class CodebookSet:
    """
    Per-user codebooks for both cells.

    ``words[i, n, m]`` is codeword m (0-based) of user n in cell i, a unit
    vector of length n_t. Shape ``(2, K, 2**B, n_t)``.
    """
    words: np.ndarray
    b_bits: int

    @property
    def k_users(self):
        return self.words.shape[1]

    @property
    def size(self):
        return self.words.shape[2]

    @property
    def compound_size(self):
        return self.size ** self.k_users


@dataclass(frozen=True)
class CompoundCodeword:
    cell: int
    m: int               # 1-based compound index, as fed back
    vectors: np.ndarray  # (K, n_t)


def generate_codebooks(cfg, seed, trial, attempt=0):
    """Normalized i.i.d. CN(0, 1) vectors, i.e. uniform on the complex unit sphere."""
    rng = substream(seed, trial, TAG_CODEBOOK, attempt)
    raw = complex_normal(rng, (cfg.cells, cfg.k_users, cfg.codebook_size, cfg.n_t))
    words = raw / np.linalg.norm(raw, axis=-1, keepdims=True)
    return CodebookSet(words=words, b_bits=cfg.b_bits)


def decode_index(m, k_users, b_bits):
    """
    Per-user codeword indices (0-based) of the 1-based compound index ``m``.

    User 1 is the least significant base-2**B digit.
    """
    size = 2 ** b_bits
    if not 1 <= m <= size ** k_users:
        raise IndexOutOfRange(f"compound index {m} outside 1..{size ** k_users}")
    rest = m - 1
    digits = []
    for _ in range(k_users):
        rest, d = divmod(rest, size)
        digits.append(d)
    return tuple(digits)


def encode_index(digits, b_bits):
    size = 2 ** b_bits
    m = 0
    for d in reversed(digits):
        if not 0 <= d < size:
            raise IndexOutOfRange(f"codeword index {d} outside 0..{size - 1}")
        m = m * size + d
    return m + 1


def digit_table(k_users, b_bits):
    """All compound indices decoded at once, shape ``(2**(K*B), K)``, row m-1."""
    size = 2 ** b_bits
    m = np.arange(size ** k_users)
    return np.stack([(m // size ** n) % size for n in range(k_users)], axis=1)


def compound_codeword(cb, cell, m):
    digits = decode_index(m, cb.k_users, cb.b_bits)
    vectors = np.stack([cb.words[cell, n, d] for n, d in enumerate(digits)])
    return CompoundCodeword(cell=cell, m=m, vectors=vectors)
