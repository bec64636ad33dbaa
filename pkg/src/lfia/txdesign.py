"""
Transmit beamformer selection for the users of one cell.

The base station that suffers the interference picks the neighbour users'
vectors and feeds back their indices. Three rules are available: the joint
compound-codebook search that minimizes the overall residual interference,
per-user chordal-distance quantization of an ideal alignment solution, and
that ideal solution itself (unquantized).
"""
from dataclasses import dataclass

import numpy as np

from .channel import TAG_TARGET, complex_normal, substream
from .codebook import compound_codeword, decode_index, digit_table, encode_index
from .errors import InvalidConfig
from .linalg import invert, is_orthonormal
from .rxdesign import interference_gram, rho_k, rho_k_batch

# Candidates per batched eigen-solve; bounds peak memory of the joint search.
SEARCH_CHUNK = 1 << 14
# Objectives this close (relative to the largest) count as tied.
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class TxSelection:
    cell: int
    m_star: int           # 1-based compound index; 0 when not from a codebook
    vectors: np.ndarray   # (K, n_t), unit rows
    objective: float = float("nan")
    digits: tuple = ()


@dataclass(frozen=True)
class AlignmentTarget:
    cell: int
    basis: np.ndarray       # (n_r, n_r - K) orthonormal
    complement: np.ndarray  # (n_r, K) orthonormal, spans Col(basis)^perp

    def __post_init__(self):
        if not is_orthonormal(np.hstack([self.basis, self.complement])):
            raise ValueError("alignment target basis is not orthonormal")


def candidate_objectives(cross, cb, cell):
    """
    Residual-interference objective of every compound codeword.

    Returns an array of length ``2**(K*B)`` whose entry m-1 belongs to
    compound index m.
    """
    k = cb.k_users
    words = cb.words[cell]  # (K, 2**B, n_t)
    # cols[n, j] = G_n c_{n,j}, outer[n, j] = cols cols^H
    cols = np.einsum("nrt,njt->njr", cross, words)
    outer = cols[..., :, None] * cols[..., None, :].conj()
    table = digit_table(k, cb.b_bits)
    out = np.empty(len(table))
    for start in range(0, len(table), SEARCH_CHUNK):
        rows = table[start:start + SEARCH_CHUNK]
        A = outer[0][rows[:, 0]].copy()
        for n in range(1, k):
            A += outer[n][rows[:, n]]
        out[start:start + len(rows)] = rho_k_batch(A, k)
    return out


def quantize_joint(cross, cb, cell):
    """
    Exhaustive compound-codebook search minimizing the residual interference.

    Parameters
    ----------
    cross : (K, n_r, n_t) array
        Channels from the users of ``cell`` to the victim base station.
    cb : CodebookSet
    cell : int
        0-based cell whose users' vectors are being chosen.

    Returns
    -------
    TxSelection
        ``m_star`` is the lowest compound index attaining the minimum.
    """
    k, n_r = cross.shape[0], cross.shape[1]
    if n_r <= k:
        raise InvalidConfig(f"joint quantization needs n_r > K (n_r={n_r}, K={k})")
    objectives = candidate_objectives(cross, cb, cell)
    m_star = lowest_argmin(objectives) + 1
    chosen = compound_codeword(cb, cell, m_star)
    objective = max(0.0, rho_k(interference_gram(cross, chosen.vectors), k))
    return TxSelection(cell=cell, m_star=m_star, vectors=chosen.vectors,
                       objective=objective,
                       digits=decode_index(m_star, cb.k_users, cb.b_bits))


def lowest_argmin(values):
    """First index whose value is within the tie tolerance of the minimum."""
    values = np.asarray(values)
    tol = TIE_RTOL * max(1.0, float(np.max(np.abs(values))))
    return int(np.flatnonzero(values <= values.min() + tol)[0])


def quantize_chordal(ideal, cb, cell):
    """Per-user codeword closest in chordal distance to each ideal vector."""
    words = cb.words[cell]
    corr = np.abs(np.einsum("njt,nt->nj", words.conj(), ideal))
    digits = np.array([lowest_argmin(-row) for row in corr])
    vectors = words[np.arange(len(digits)), digits]
    digits = tuple(int(d) for d in digits)
    return TxSelection(cell=cell, m_star=encode_index(digits, cb.b_bits),
                       vectors=vectors, digits=digits)


def chordal_distance(a, b):
    return float(np.sqrt(max(0.0, 1.0 - abs(np.vdot(a, b)) ** 2)))


def random_target(n_r, k, seed, trial, cell, attempt=0):
    """Random orthonormal interference subspace of dimension n_r - K at ``cell``'s BS."""
    if n_r <= k:
        raise InvalidConfig("need n_r > K")
    rng = substream(seed, trial, TAG_TARGET, attempt)
    Z = complex_normal(rng, (2, n_r, n_r))[cell]
    Q, R = np.linalg.qr(Z)
    # Fix the phase ambiguity of QR so Q is Haar distributed.
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))[None, :]
    return AlignmentTarget(cell=cell, basis=Q[:, :n_r - k], complement=Q[:, n_r - k:])


def ideal_alignment_tb(cross, target):
    """
    Unquantized vectors pushing each interferer into the target subspace.

    User n (0-based) is steered onto column ``n mod (n_r - K)`` of the target.

    Raises
    ------
    Singular
        If any cross channel is numerically singular.
    """
    k, n_r, n_t = cross.shape
    if n_t != n_r:
        raise InvalidConfig("ideal alignment needs n_t == n_r")
    width = target.basis.shape[1]
    out = np.empty((k, n_t), dtype=complex)
    for n in range(k):
        x = invert(cross[n]) @ target.basis[:, n % width]
        out[n] = x / np.linalg.norm(x)
    return out
