"""Stationary random graph signals: generation, periodogram, stationarity ratio."""

from __future__ import annotations

import numpy as np

from .eigen import SpectralBasis
from .filters import FilterTaps, apply_taps


def white_noise(n: int, n_real: int, seed: int) -> np.ndarray:
    """(n_real, n) standard Gaussian draws; row i depends only on (seed, i)."""
    if n_real < 1:
        raise ValueError("need at least one realization")
    rows = np.empty((n_real, n))
    for i in range(n_real):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(i,)))
        rows[i] = rng.standard_normal(n)
    return rows


def generate_gwss(taps: FilterTaps, S, n_real: int, seed: int) -> np.ndarray:
    """Realizations x_i = H(S) eps_i, returned as rows of an (n_real, N) array."""
    S = np.asarray(S, dtype=float)
    eps = white_noise(S.shape[0], n_real, seed)
    return apply_taps(taps, S, eps.T).T


def generate_gwss_spectral(response, b: SpectralBasis, n_real: int, seed: int) -> np.ndarray:
    """Realizations U diag(H) U^T eps_i for a sampled or callable response."""
    h = response(b.eigenvalues) if callable(response) else np.asarray(response, dtype=float)
    eps = white_noise(b.n, n_real, seed)
    u = b.eigenvectors
    return ((eps @ u) * h) @ u.T


def periodogram(realizations, b: SpectralBasis) -> np.ndarray:
    """Mean over realizations of the squared GDFT coefficients."""
    r = np.atleast_2d(np.asarray(realizations, dtype=float))
    if r.shape[0] == 0:
        raise ValueError("no realizations")
    if r.shape[1] != b.n:
        raise ValueError(f"realization length {r.shape[1]} does not match basis size {b.n}")
    return np.mean((r @ b.eigenvectors) ** 2, axis=0)


def sample_covariance(realizations) -> np.ndarray:
    r = np.atleast_2d(np.asarray(realizations, dtype=float))
    return r.T @ r / r.shape[0]


def stationarity_check(R, b: SpectralBasis) -> float:
    """||offdiag(U^T R U)||_F / ||U^T R U||_F; zero for a stationary covariance."""
    R = np.asarray(R, dtype=float)
    if R.shape != (b.n, b.n):
        raise ValueError(f"covariance shape {R.shape} does not match basis size {b.n}")
    if np.max(np.abs(R - R.T)) > 1e-10 * max(1.0, np.max(np.abs(R))):
        raise ValueError("covariance matrix is not symmetric")
    c = b.eigenvectors.T @ R @ b.eigenvectors
    total = np.linalg.norm(c)
    if total == 0:
        return 0.0
    return float(np.linalg.norm(c - np.diag(np.diag(c))) / total)


def theoretical_psd(response, lambdas) -> np.ndarray:
    """p_x(k) = |H(lambda_k)|^2 for white-driven input."""
    lam = np.asarray(lambdas, dtype=float)
    if isinstance(response, FilterTaps):
        h = response.response(lam)
    else:
        h = response(lam) if callable(response) else np.asarray(response, dtype=float)
    return np.abs(h) ** 2
