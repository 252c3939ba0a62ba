"""Dense symmetric eigensolver (cyclic Jacobi, parallel ordering)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SYMMETRY_TOL = 1e-10
OFF_TOL = 1e-12
MAX_SWEEPS = 100
CLUSTER_TOL = 1e-9
_SIGN_TIE_TOL = 1e-10


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralBasis:
    """Eigenpairs of a symmetric operator.

    ``eigenvectors[:, k]`` is u_k, paired with ``eigenvalues[k]`` (ascending).
    ``clusters`` lists index groups whose eigenvalues coincide within
    ``CLUSTER_TOL * max|lambda|``; vectors inside a group are an arbitrary
    orthonormal basis of the eigenspace.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    operator_kind: str = "generic"
    clusters: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def degenerate(self) -> bool:
        return bool(self.clusters)

    def projector(self, indices) -> np.ndarray:
        u = self.eigenvectors[:, list(indices)]
        return u @ u.T

    def evaluate(self, response) -> np.ndarray:
        """Matrix U diag(response) U^T; ``response`` is a vector or a callable of lambda."""
        h = response(self.eigenvalues) if callable(response) else np.asarray(response, float)
        if h.shape != self.eigenvalues.shape:
            raise ValueError(f"response length {h.shape} does not match basis size {self.n}")
        return (self.eigenvectors * h) @ self.eigenvectors.T


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one parallel Jacobi sweep; each round touches disjoint index pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        if pairs:
            p, q = np.array(pairs).T
            rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def apply_sign_convention(u: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (lowest index on ties) is positive."""
    u = np.array(u, dtype=float, copy=True)
    mag = np.abs(u)
    peak = mag.max(axis=0)
    for k in range(u.shape[1]):
        idx = int(np.flatnonzero(mag[:, k] >= peak[k] * (1 - _SIGN_TIE_TOL))[0])
        if u[idx, k] < 0:
            u[:, k] = -u[:, k]
    return u


def find_clusters(eigenvalues: np.ndarray, rel_tol: float = CLUSTER_TOL) -> tuple[tuple[int, ...], ...]:
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    tol = rel_tol * (scale if scale > 0 else 1.0)
    clusters, current = [], [0]
    for i in range(1, eigenvalues.size):
        if eigenvalues[i] - eigenvalues[i - 1] <= tol:
            current.append(i)
        else:
            if len(current) > 1:
                clusters.append(tuple(current))
            current = [i]
    if len(current) > 1:
        clusters.append(tuple(current))
    return tuple(clusters)


def eig_sym(m, operator_kind: str = "generic", *, tol: float = OFF_TOL,
            max_sweeps: int = MAX_SWEEPS) -> SpectralBasis:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Rotations within a round act on disjoint index pairs (round-robin
    ordering), so each round is applied as a batch of row/column updates.
    Iteration stops once the off-diagonal Frobenius norm falls below
    ``tol * ||M||_F``.

    Raises:
        ValueError: input is not square, not finite, or asymmetric beyond 1e-10.
        ConvergenceError: tolerance not reached within ``max_sweeps``.
    """
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    asym = float(np.max(np.abs(a - a.T))) if n else 0.0
    if asym > SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric (max |M - M^T| = {asym:.3e})")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    if n == 0:
        return SpectralBasis(np.zeros(0), np.zeros((0, 0)), operator_kind)

    rounds = _round_robin(n)
    converged = scale == 0.0 or _off_norm(a) <= tol * scale
    sweeps = 0
    while not converged:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})")
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            sgn = np.where(tau >= 0, 1.0, -1.0)
            t = sgn / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
        sweeps += 1
        converged = _off_norm(a) <= tol * scale

    lam = np.diag(a).copy()
    order = np.argsort(lam, kind="stable")
    lam = lam[order]
    u = apply_sign_convention(v[:, order])
    return SpectralBasis(lam, u, operator_kind, find_clusters(lam))
