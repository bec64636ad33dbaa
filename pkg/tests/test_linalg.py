import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lfia.errors import NotHermitian, Singular
from lfia.linalg import (fro_norm_sq, hermitian_eig_ascending, invert,
                         is_orthonormal)
from conftest import random_hermitian


def test_identity_eigenvalues():
    pairs = hermitian_eig_ascending(np.eye(3))
    np.testing.assert_allclose(pairs.values, [1, 1, 1])
    assert is_orthonormal(pairs.vectors)


def test_diagonal_sorted_ascending():
    pairs = hermitian_eig_ascending(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(pairs.values, [1, 2, 3])


def test_reconstruction(rng):
    A = random_hermitian(rng, 4)
    w, V = hermitian_eig_ascending(A)
    np.testing.assert_allclose(V @ np.diag(w) @ V.conj().T, A, atol=1e-7)
    for j in range(4):
        np.testing.assert_allclose(A @ V[:, j], w[j] * V[:, j], atol=1e-7)


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig_ascending(np.array([[1, 2], [0, 1]], dtype=complex))
    with pytest.raises(NotHermitian):
        hermitian_eig_ascending(np.ones((2, 3)))


def test_psd_check():
    with pytest.raises(NotHermitian):
        hermitian_eig_ascending(np.diag([1.0, -1.0]), psd=True)
    hermitian_eig_ascending(np.diag([1.0, 0.0]), psd=True)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_psd_trace_and_orthonormality(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A = X @ X.conj().T
    w, V = hermitian_eig_ascending(A, psd=True)
    assert np.all(np.diff(w) >= 0)
    assert abs(w.sum() - np.trace(A).real) <= 1e-7 * max(1.0, np.trace(A).real)
    assert np.max(np.abs(V.conj().T @ V - np.eye(n))) <= 1e-9


def test_invert_identity_and_diagonal():
    np.testing.assert_allclose(invert(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(invert(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))


def test_invert_residual(rng):
    M = np.eye(3) * 3 + 0.3 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    np.testing.assert_allclose(M @ invert(M), np.eye(3), atol=1e-7)


def test_invert_singular():
    with pytest.raises(Singular):
        invert(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(Singular):
        invert(np.diag([1.0, 1e-14]))


def test_fro_norm_sq():
    assert fro_norm_sq(np.zeros((2, 2))) == 0
    assert fro_norm_sq(np.array([0, 1, 0])) == 1
    # |1|^2 + |i|^2 + |1+i|^2 = 1 + 1 + 2
    assert fro_norm_sq(np.array([1, 1j, 1 + 1j])) == pytest.approx(4.0)
