import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphsig.eigen import ConvergenceError, apply_sign_convention, eig_sym, find_clusters


def _sym(seed, n):
    a = np.random.default_rng(seed).standard_normal((n, n))
    return a + a.T


@given(st.integers(0, 10_000), st.integers(1, 20))
def test_reconstruction_and_orthonormality(seed, n):
    m = _sym(seed, n)
    b = eig_sym(m)
    u, lam = b.eigenvectors, b.eigenvalues
    scale = max(1.0, np.linalg.norm(m))
    assert np.max(np.abs(u @ np.diag(lam) @ u.T - m)) <= 1e-10 * scale
    assert np.max(np.abs(u.T @ u - np.eye(n))) <= 1e-10
    assert np.all(np.diff(lam) >= 0)


@given(st.integers(0, 10_000), st.integers(2, 16))
def test_eigenvalues_match_lapack(seed, n):
    m = _sym(seed, n)
    np.testing.assert_allclose(eig_sym(m).eigenvalues, np.linalg.eigvalsh(m), atol=1e-10 * np.linalg.norm(m))


@given(st.integers(0, 10_000), st.integers(2, 12))
def test_sign_convention_largest_entry_positive(seed, n):
    u = eig_sym(_sym(seed, n)).eigenvectors
    for k in range(n):
        i = int(np.argmax(np.abs(u[:, k])))
        assert u[i, k] > 0


def test_sign_tie_goes_to_lowest_index():
    u = np.array([[-1.0, 1.0], [1.0, 1.0]]) / np.sqrt(2)
    out = apply_sign_convention(u)
    assert out[0, 0] > 0 and out[0, 1] > 0


def test_diagonal_and_zero_matrices():
    b = eig_sym(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(b.eigenvalues, [1.0, 2.0, 3.0])
    z = eig_sym(np.zeros((3, 3)))
    np.testing.assert_array_equal(z.eigenvalues, np.zeros(3))
    np.testing.assert_array_equal(z.eigenvectors, np.eye(3))


def test_degenerate_cluster_reported():
    # complete graph K4 Laplacian: eigenvalue 4 with multiplicity 3
    L = 4 * np.eye(4) - np.ones((4, 4))
    b = eig_sym(L)
    assert b.clusters == ((1, 2, 3),)
    assert b.degenerate
    p = b.projector([1, 2, 3])
    np.testing.assert_allclose(p, np.eye(4) - np.ones((4, 4)) / 4, atol=1e-12)


def test_find_clusters_tolerance():
    assert find_clusters(np.array([0.0, 1.0, 1.0 + 1e-12, 2.0])) == ((1, 2),)
    assert find_clusters(np.array([0.0, 1.0, 1.1])) == ()


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.array([[0.0, 1.0], [2.0, 0.0]]),
                                 np.array([[np.nan, 0.0], [0.0, 1.0]])])
def test_rejects_invalid_input(bad):
    with pytest.raises(ValueError):
        eig_sym(bad)


def test_convergence_error_on_tiny_budget():
    with pytest.raises(ConvergenceError):
        eig_sym(_sym(0, 12), max_sweeps=1)


def test_evaluate_response():
    m = _sym(3, 6)
    b = eig_sym(m)
    np.testing.assert_allclose(b.evaluate(lambda lam: lam ** 2), m @ m, atol=1e-9)
    with pytest.raises(ValueError):
        b.evaluate(np.ones(5))
