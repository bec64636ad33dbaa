"""
Small dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of complex dtype. The eigensolver and
inverse are thin wrappers over LAPACK that add the symmetry, ordering and
conditioning checks the rest of the code relies on.
"""
from typing import NamedTuple

import numpy as np

from .errors import NoConvergence, NotHermitian, Singular

SYMMETRY_TOL = 1e-9
ORTHONORMAL_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-7
RCOND_MIN = 1e-12


class EigPairs(NamedTuple):
    values: np.ndarray   # ascending, real
    vectors: np.ndarray  # column j pairs with values[j]


def is_hermitian(A, tol=SYMMETRY_TOL):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    scale = max(1.0, np.linalg.norm(A))
    return np.linalg.norm(A - A.conj().T) <= tol * scale


def hermitian_eig_ascending(A, psd=False):
    """
    Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Parameters
    ----------
    A : (n, n) array_like
        Hermitian matrix.
    psd : bool
        If True, additionally require every eigenvalue to be at least
        ``-SYMMETRY_TOL`` (scaled by the matrix norm).

    Returns
    -------
    EigPairs
        ``values`` ascending and ``vectors`` with orthonormal columns.

    Raises
    ------
    NotHermitian
        If ``A`` is not square or not Hermitian within tolerance.
    NoConvergence
        If LAPACK fails to converge.
    """
    A = np.asarray(A, dtype=complex)
    if not is_hermitian(A):
        raise NotHermitian(f"matrix of shape {A.shape} is not Hermitian")
    try:
        values, vectors = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    if psd:
        floor = -SYMMETRY_TOL * max(1.0, np.linalg.norm(A))
        if values[0] < floor:
            raise NotHermitian(f"matrix is not PSD (min eigenvalue {values[0]:.3e})")
    return EigPairs(values, vectors)


def invert(M):
    """Inverse of a square matrix; raises `Singular` when rcond < 1e-12."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if rcond(M) < RCOND_MIN:
        raise Singular("matrix is numerically singular")
    return np.linalg.inv(M)


def rcond(M):
    """Reciprocal 2-norm condition number (0 for an exactly singular matrix)."""
    s = np.linalg.svd(np.asarray(M), compute_uv=False)
    if s[0] == 0:
        return 0.0
    return float(s[-1] / s[0])


def fro_norm_sq(M):
    M = np.asarray(M)
    return float(np.sum(M.real ** 2 + M.imag ** 2))


def is_orthonormal(Q, tol=ORTHONORMAL_TOL):
    """True when the columns of ``Q`` are orthonormal, entrywise within ``tol``."""
    Q = np.asarray(Q)
    gram = Q.conj().T @ Q
    return bool(np.max(np.abs(gram - np.eye(Q.shape[1]))) <= tol)


def normalize(x):
    return x / np.linalg.norm(x)
