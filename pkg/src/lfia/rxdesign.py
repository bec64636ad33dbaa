"""
Receive-side processing at one base station.

The receiver for home user k is the cascade ``r_k^H U^H``: ``U`` (n_r x K,
orthonormal columns) suppresses inter-cell interference and ``r_k`` zero
forces the other home users inside ``Col(U)``.

Shapes used below: ``cross`` and ``direct`` are stacks of K matrices
``(K, n_r, n_t)``; ``V`` is a stack of K transmit vectors ``(K, n_t)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfig, Singular, SingularEffectiveChannel
from .linalg import hermitian_eig_ascending, invert, rcond

ILL_CONDITIONED_RCOND = 1e-8


@dataclass(frozen=True)
class RxDesign:
    u_basis: np.ndarray      # (n_r, K)
    filters: np.ndarray      # (K, K), row k is r_k
    eff_channel: np.ndarray  # (K, K)
    residual_ici: float
    cond_flag: bool


def received_columns(mats, V):
    """Columns ``mats[n] @ V[n]`` stacked into an (n_r, K) matrix."""
    return np.einsum("nij,nj->in", mats, V)


def interference_gram(cross, V):
    Gt = received_columns(cross, V)
    return Gt @ Gt.conj().T


def optimal_receive_basis(A, k):
    """Eigenvectors of the ``k`` smallest eigenvalues of ``A``, ascending."""
    if k >= A.shape[0]:
        raise InvalidConfig(f"need n_r > K, got n_r={A.shape[0]}, K={k}")
    return hermitian_eig_ascending(A).vectors[:, :k]


def rho_k(A, k):
    """Sum of the ``k`` smallest eigenvalues of a Hermitian matrix."""
    return float(np.sum(hermitian_eig_ascending(A).values[:k]))


def rho_k_batch(A, k):
    """`rho_k` over a stack of Hermitian matrices ``(..., n, n)``."""
    return np.sum(np.linalg.eigvalsh(A)[..., :k], axis=-1)


def residual_ici(U, cross, V):
    """Overall residual interference ``sum_n ||U^H G_n v_n||^2`` left in Col(U)."""
    proj = U.conj().T @ received_columns(cross, V)
    return float(np.sum(np.abs(proj) ** 2))


def zf_filters(eff_channel):
    """Rows of the inverse effective channel, conjugated and normalized."""
    inv = invert(eff_channel)
    rows = inv / np.linalg.norm(inv, axis=1, keepdims=True)
    return rows.conj()


def build_rx(U, direct_home, V_home, cross, V_neighbor):
    """
    Assemble the cascaded receiver of one cell.

    Raises
    ------
    SingularEffectiveChannel
        If ``U^H [H_1 v_1, ..., H_K v_K]`` is numerically singular.
    """
    k = U.shape[1]
    if k >= U.shape[0]:
        raise InvalidConfig("need n_r > K")
    eff = U.conj().T @ received_columns(direct_home, V_home)
    try:
        filters = zf_filters(eff)
    except Singular as exc:
        raise SingularEffectiveChannel(str(exc)) from exc
    return RxDesign(
        u_basis=U,
        filters=filters,
        eff_channel=eff,
        residual_ici=residual_ici(U, cross, V_neighbor),
        cond_flag=rcond(eff) < ILL_CONDITIONED_RCOND,
    )


def final_ici(rx, cross, V_neighbor):
    """Per-user interference power after the full cascade, shape (K,)."""
    post = rx.filters.conj() @ (rx.u_basis.conj().T @ received_columns(cross, V_neighbor))
    return np.sum(np.abs(post) ** 2, axis=1)


def signal_gains(rx, direct_home, V_home):
    """|r_k^H U^H H_k v_k|^2 for every home user, shape (K,)."""
    return np.abs(np.einsum("kj,jk->k", rx.filters.conj(), rx.eff_channel)) ** 2


def _rate(snr, signal, interference):
    snr = np.asarray(snr, dtype=float)
    return np.log2(1.0 + snr * signal / (1.0 + snr * interference))


def per_user_rate(rx, user, direct, v, cross, V_neighbor, snr):
    """Throughput of one home user in bits/channel use; ``snr`` is linear."""
    r = rx.filters[user]
    lead = r.conj() @ rx.u_basis.conj().T
    signal = abs(lead @ (direct @ v)) ** 2
    interference = np.sum(np.abs(lead @ received_columns(cross, V_neighbor)) ** 2)
    return _rate(snr, signal, interference)


def cell_rates(rx, direct_home, V_home, cross, V_neighbor, snr):
    """Rates of all K home users at every SNR point, shape ``(K, len(snr))``."""
    snr = np.atleast_1d(np.asarray(snr, dtype=float))
    signal = signal_gains(rx, direct_home, V_home)
    interference = final_ici(rx, cross, V_neighbor)
    return _rate(snr[None, :], signal[:, None], interference[:, None])


def perfect_feedback_rate(direct, v_ideal, U_ideal, r_ideal, snr):
    """Interference-free throughput of one user under perfect alignment."""
    gain = abs(r_ideal.conj() @ U_ideal.conj().T @ direct @ v_ideal) ** 2
    return _rate(snr, gain, 0.0)
