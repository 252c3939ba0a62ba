"""Subsampling, sparse spectral recovery and measurement constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .eigen import SpectralBasis

RANK_TOL = 1e-10
RIC_MAX_N = 16
RIC_MAX_SUBSETS = 200_000


@dataclass(frozen=True)
class MeasurementSet:
    vertices: tuple[int, ...]
    y: np.ndarray

    def __post_init__(self):
        v = tuple(int(i) for i in self.vertices)
        y = np.asarray(self.y, dtype=float).reshape(-1)
        if len(set(v)) != len(v):
            raise ValueError("measurement vertices must be distinct")
        if y.size != len(v):
            raise ValueError(f"{len(v)} vertices but {y.size} measured values")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "y", y)


@dataclass
class RecoveryResult:
    support: tuple[int, ...]
    spectrum: np.ndarray
    signal: np.ndarray | None
    residual_norms: list[float] = field(default_factory=list)
    stagnated: bool = False


def _rows(b: SpectralBasis, vertices) -> np.ndarray:
    idx = list(vertices)
    if any(not 0 <= i < b.n for i in idx):
        raise IndexError("measurement vertex outside the graph")
    return b.eigenvectors[idx, :]


def _numerical_rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > RANK_TOL * max(1.0, s[0])))


def reconstruct_known_support(m: MeasurementSet, b: SpectralBasis, support) -> tuple[np.ndarray, np.ndarray, float]:
    """Least-squares spectrum on a known support from vertex samples.

    Returns (X, x, cond(A_MK^T A_MK)).
    """
    supp = sorted(int(k) for k in support)
    if len(set(supp)) != len(supp) or any(not 0 <= k < b.n for k in supp):
        raise ValueError("support indices must be distinct and inside [0, N)")
    if len(m.vertices) < len(supp):
        raise ValueError("fewer measurements than support size")
    a = _rows(b, m.vertices)[:, supp]
    if _numerical_rank(a) < len(supp):
        raise np.linalg.LinAlgError("A_MK is rank deficient; support not identifiable from these samples")
    X = np.zeros(b.n)
    X[supp] = np.linalg.pinv(a) @ m.y
    return X, b.eigenvectors @ X, float(np.linalg.cond(a.T @ a))


def omp(a, y, sparsity: int | None = None, epsilon: float | None = None,
        raw_correlation: bool = False) -> RecoveryResult:
    """Greedy support growth with a least-squares refit after every atom.

    Atoms are chosen by |a_k^T e| / ||a_k|| (or raw |a_k^T e|), lowest index
    on ties. Stops after ``sparsity`` atoms or once ||e|| < epsilon; the
    default epsilon is 1e-6 ||y||.
    """
    a = np.asarray(a, dtype=float)
    y = np.asarray(y, dtype=float)
    n_atoms = a.shape[1]
    if sparsity is not None and sparsity >= a.shape[0]:
        raise ValueError(f"need more measurements ({a.shape[0]}) than sparsity ({sparsity})")
    eps = 1e-6 * float(np.linalg.norm(y)) if epsilon is None else float(epsilon)
    limit = min(sparsity if sparsity is not None else a.shape[0] - 1, n_atoms)
    norms = np.linalg.norm(a, axis=0)
    usable = norms > 1e-12
    scale = np.ones(n_atoms) if raw_correlation else np.where(usable, norms, 1.0)

    support: list[int] = []
    coef = np.zeros(0)
    e = y.copy()
    history = [float(np.linalg.norm(e))]
    stagnated = False
    while len(support) < limit and history[-1] >= eps:
        corr = np.abs(a.T @ e) / scale
        corr[~usable] = -1.0
        corr[support] = -1.0
        k = int(np.argmax(corr))
        if corr[k] <= 0:
            stagnated = True
            break
        support.append(k)
        coef, *_ = np.linalg.lstsq(a[:, support], y, rcond=None)
        e = y - a[:, support] @ coef
        history.append(float(np.linalg.norm(e)))
        if history[-1] > history[-2] * (1 + 1e-12):
            stagnated = True
    X = np.zeros(n_atoms)
    X[support] = coef
    if sparsity is not None and len(support) < sparsity and history[-1] >= eps:
        stagnated = True
    return RecoveryResult(tuple(sorted(support)), X, None, history, stagnated)


def mp_recover(m: MeasurementSet, b: SpectralBasis, sparsity: int | None = None,
               epsilon: float | None = None, raw_correlation: bool = False) -> RecoveryResult:
    """Recover a spectrally sparse signal from vertex samples."""
    res = omp(_rows(b, m.vertices), m.y, sparsity, epsilon, raw_correlation)
    res.signal = b.eigenvectors @ res.spectrum
    return res


def coherence(a) -> float:
    """Largest |<a_k, a_j>| between distinct unit-normalized columns.

    A column that vanishes on the measurement set makes its index unidentifiable;
    this is reported as mu = 1.
    """
    a = np.asarray(a, dtype=float)
    norms = np.linalg.norm(a, axis=0)
    if np.any(norms <= 1e-12):
        return 1.0
    an = a / norms
    gram = np.abs(an.T @ an)
    np.fill_diagonal(gram, 0.0)
    return float(min(gram.max(), 1.0)) if gram.size else 0.0


def uniqueness_threshold(mu: float) -> float:
    """K must be below (1 + 1/mu)/2; +inf when mu vanishes."""
    return float("inf") if mu <= 1e-10 else 0.5 * (1.0 + 1.0 / mu)


def coherence_bound(b: SpectralBasis, vertices) -> tuple[float, float]:
    verts = list(vertices)
    if not verts:
        raise ValueError("vertex subset is empty")
    mu = coherence(_rows(b, verts))
    return mu, uniqueness_threshold(mu)


def support_matrix_reconstruct(x_s, b_mask, c_mask, b: SpectralBasis) -> np.ndarray:
    """X = pinv(B U C) x_s with B, C diagonal 0/1 selectors."""
    x_s = np.asarray(x_s, dtype=float)
    bm = np.asarray(b_mask, dtype=float).reshape(-1)
    cm = np.asarray(c_mask, dtype=float).reshape(-1)
    if not (x_s.shape == bm.shape == cm.shape == (b.n,)):
        raise ValueError("signal and selector lengths must equal N")
    if np.any(np.abs(x_s[bm == 0]) > 0):
        raise ValueError("x_s has nonzero values outside the sampled vertices")
    buc = bm[:, None] * b.eigenvectors * cm[None, :]
    k = int(np.count_nonzero(cm))
    if _numerical_rank(buc) < k:
        raise np.linalg.LinAlgError("rank(B U C) is below the support size")
    return np.linalg.pinv(buc) @ x_s


def gaussian_matrix(m: int, n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal((m, n))


def random_measurements(x, B) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[1] != x.shape[0]:
        raise ValueError(f"measurement matrix {B.shape} incompatible with signal length {x.shape[0]}")
    return B @ x


def aggregate_matrix(S, vertex: int, count: int) -> np.ndarray:
    """Rows n of S^0, S^1, ..., S^{M-1}."""
    S = np.asarray(S, dtype=float)
    n = S.shape[0]
    if not 0 <= vertex < n:
        raise IndexError(f"vertex {vertex} outside [0, {n})")
    if not 1 <= count <= n:
        raise ValueError(f"measurement count must be in [1, {n}]")
    rows = np.empty((count, n))
    r = np.zeros(n)
    r[vertex] = 1.0
    for i in range(count):
        rows[i] = r
        r = r @ S
    return rows


def aggregate_measurements(x, S, vertex: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """y(m) = (S^m x)(n) for m < M, with the implied measurement matrix."""
    B = aggregate_matrix(S, vertex, count)
    return B @ np.asarray(x, dtype=float), B


def ric_bruteforce(b: SpectralBasis, vertices, sparsity: int) -> float:
    """delta_2K by enumerating every 2K-column submatrix of the sampled basis."""
    if b.n > RIC_MAX_N:
        raise ValueError(f"exhaustive RIC refused: N={b.n} exceeds {RIC_MAX_N}")
    width = 2 * sparsity
    if not 1 <= width <= b.n:
        raise ValueError("2K must be between 1 and N")
    if comb(b.n, width) > RIC_MAX_SUBSETS:
        raise ValueError("too many subsets to enumerate")
    a = _rows(b, vertices)
    delta = 0.0
    for cols in combinations(range(b.n), width):
        sub = a[:, cols]
        d = np.linalg.eigvalsh(sub.T @ sub)
        delta = max(delta, 1.0 - d[0], d[-1] - 1.0)
    return float(delta)
