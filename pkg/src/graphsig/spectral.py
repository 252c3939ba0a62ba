"""Graph Fourier transform pair and related spectral-domain operations."""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .eigen import SpectralBasis, eig_sym
from .graph import Graph, OperatorKind, operator_matrix

VANDERMONDE_COND_WARN = 1e12


def basis_of(g: Graph, kind: OperatorKind | str = OperatorKind.LAPLACIAN) -> SpectralBasis:
    """Eigenbasis of an operator matrix of an undirected graph."""
    if g.directed:
        raise ValueError("spectral bases are built for undirected graphs only")
    kind = OperatorKind(kind)
    return eig_sym(operator_matrix(g, kind).values, kind.value)


def _check_len(x: np.ndarray, b: SpectralBasis) -> None:
    if x.shape[0] != b.n:
        raise ValueError(f"signal length {x.shape[0]} does not match basis size {b.n}")


def gdft(x, b: SpectralBasis) -> np.ndarray:
    """X = U^T x. Accepts a vector or an (N, R) stack of signals."""
    x = np.asarray(x, dtype=float)
    _check_len(x, b)
    return b.eigenvectors.T @ x


def igdft(X, b: SpectralBasis) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    _check_len(X, b)
    return b.eigenvectors @ X


def adjacency_variation(b: SpectralBasis) -> np.ndarray:
    """Two-norm total variation |1 - lambda/lambda_max|^2 of each adjacency eigenvector."""
    lmax = float(np.max(np.abs(b.eigenvalues)))
    if lmax == 0:
        raise ValueError("lambda_max is zero; variation is undefined")
    return np.abs(1.0 - b.eigenvalues / lmax) ** 2


def adjacency_variation_order(b: SpectralBasis) -> np.ndarray:
    """Permutation of eigen-indices from smoothest (largest lambda) to fastest varying."""
    return np.argsort(adjacency_variation(b), kind="stable")


def graph_convolution(x, h, b: SpectralBasis) -> np.ndarray:
    """Generalized convolution: inverse GDFT of X(k) H(k)."""
    x = np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    if x.shape != h.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {h.shape}")
    return igdft(gdft(x, b) * gdft(h, b), b)


def spectral_shift(y, i: int, b: SpectralBasis) -> np.ndarray:
    """Y_i(k) = sum_n y(n) u_i(n) u_k(n), a shift of the spectrum by i indices."""
    y = np.asarray(y, dtype=float)
    _check_len(y, b)
    if not 0 <= i < b.n:
        raise IndexError(f"spectral index {i} outside [0, {b.n})")
    u = b.eigenvectors
    return u.T @ (y * u[:, i])


def distinct_eigenvalues(lambdas, rel_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Representative eigenvalues after merging values within rel_tol * max|lambda|.

    Returns the sorted representatives and, for every input value, the index
    of its representative.
    """
    lam = np.asarray(lambdas, dtype=float)
    order = np.argsort(lam, kind="stable")
    scale = float(np.max(np.abs(lam))) if lam.size else 0.0
    tol = rel_tol * (scale if scale > 0 else 1.0)
    reps: list[float] = []
    group = np.empty(lam.size, dtype=int)
    for idx in order:
        if reps and lam[idx] - reps[-1] <= tol:
            group[idx] = len(reps) - 1
        else:
            reps.append(float(lam[idx]))
            group[idx] = len(reps) - 1
    return np.array(reps), group


def signal_to_z_coeffs(x, b: SpectralBasis) -> np.ndarray:
    """Taps h with sum_m h_m lambda_k^m = X(k) for every k.

    Solves the Vandermonde system by partially pivoted LU. Repeated
    eigenvalues make the system singular and are rejected.
    """
    X = gdft(x, b)
    reps, _ = distinct_eigenvalues(b.eigenvalues)
    if reps.size < b.n:
        raise ValueError("repeated eigenvalues: Vandermonde system is singular")
    v = np.vander(b.eigenvalues, b.n, increasing=True)
    cond = np.linalg.cond(v)
    if cond > VANDERMONDE_COND_WARN:
        warnings.warn(f"Vandermonde condition number {cond:.3e} exceeds 1e12", RuntimeWarning,
                      stacklevel=2)
    lu, piv = scipy.linalg.lu_factor(v)
    return scipy.linalg.lu_solve((lu, piv), X)
