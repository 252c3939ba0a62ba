"""Graphs, operator matrices, isometric shift and vertex reach matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .eigen import eig_sym


class OperatorKind(str, Enum):
    ADJACENCY = "adjacency"
    NORMALIZED_ADJACENCY = "normalized_adjacency"
    LAPLACIAN = "laplacian"
    NORMALIZED_LAPLACIAN = "normalized_laplacian"
    RANDOM_WALK = "random_walk"
    GRW = "grw"
    ISOMETRIC_SVD = "isometric_svd"


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: tuple[tuple[int, int, float], ...]
    directed: bool = False

    @property
    def n(self) -> int:
        return self.n_vertices

    def weight_matrix(self) -> np.ndarray:
        w = np.zeros((self.n_vertices, self.n_vertices))
        for s, d, wt in self.edges:
            w[s, d] = wt
            if not self.directed:
                w[d, s] = wt
        return w

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for s, d, wt in self.edges:
            if wt > 0:
                adj[s].append(d)
                if not self.directed:
                    adj[d].append(s)
        return adj


@dataclass(frozen=True)
class OperatorMatrix:
    kind: OperatorKind
    values: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    @property
    def shape(self):
        return self.values.shape


def from_edge_list(rows: Iterable[Sequence], n: int, directed: bool = False) -> Graph:
    """Build a graph from ``(src, dst, weight)`` rows.

    Undirected edges are stored once; ``(a, b)`` and ``(b, a)`` count as the
    same edge, so listing both is a duplicate.
    """
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    seen: set[tuple[int, int]] = set()
    edges = []
    for row in rows:
        src, dst, weight = int(row[0]), int(row[1]), float(row[2])
        if not (0 <= src < n and 0 <= dst < n):
            raise ValueError(f"edge ({src}, {dst}) has a vertex index outside [0, {n})")
        if src == dst:
            raise ValueError(f"self-loop at vertex {src}")
        if not np.isfinite(weight) or weight < 0:
            raise ValueError(f"edge ({src}, {dst}) has invalid weight {weight}")
        key = (src, dst) if directed else (min(src, dst), max(src, dst))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        edges.append((src, dst, weight))
    return Graph(n, tuple(edges), directed)


def from_weight_matrix(w, directed: bool | None = None) -> Graph:
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"weight matrix must be square, got {w.shape}")
    if np.any(np.diag(w) != 0):
        raise ValueError("weight matrix has nonzero diagonal (self-loops)")
    if directed is None:
        directed = not np.array_equal(w, w.T)
    if not directed and not np.array_equal(w, w.T):
        raise ValueError("undirected graph requires a symmetric weight matrix")
    src, dst = np.nonzero(w if directed else np.triu(w))
    return from_edge_list(zip(src, dst, w[src, dst]), w.shape[0], directed)


def geometric_weights(positions: Sequence[tuple[Sequence[float], float]], alpha: float,
                      beta: float, threshold: float = 0.0) -> Graph:
    """Weights exp(-alpha*r - beta*h) from planar distance r and altitude difference h.

    Pairs whose weight does not exceed ``threshold`` are left unconnected.
    """
    if len(positions) < 2:
        raise ValueError("need at least two positions")
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    xy = np.array([p[0] for p in positions], dtype=float)
    alt = np.array([p[1] for p in positions], dtype=float)
    r = np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1)
    h = np.abs(alt[:, None] - alt[None, :])
    w = np.exp(-alpha * r - beta * h)
    w[w <= threshold] = 0.0
    np.fill_diagonal(w, 0.0)
    return from_weight_matrix(w, directed=False)


def degrees(g: Graph) -> np.ndarray:
    return g.weight_matrix().sum(axis=1)


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def connected_components(g: Graph) -> list[list[int]]:
    adj = g.neighbors()
    if g.directed:
        for s, d, wt in g.edges:
            if wt > 0:
                adj[d].append(s)
    label = [-1] * g.n
    comps = []
    for start in range(g.n):
        if label[start] >= 0:
            continue
        label[start] = len(comps)
        comp, queue = [start], deque([start])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if label[u] < 0:
                    label[u] = label[start]
                    comp.append(u)
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def _spectral_radius(w: np.ndarray) -> float:
    if np.allclose(w, w.T, atol=1e-12):
        lam = eig_sym(w).eigenvalues
    else:
        lam = np.linalg.eigvals(w)
    return float(np.max(np.abs(lam))) if lam.size else 0.0


def operator_matrix(g: Graph, kind: OperatorKind | str) -> OperatorMatrix:
    """Operator matrix of ``kind`` built from the weight matrix W (degrees are row sums)."""
    kind = OperatorKind(kind)
    w = g.weight_matrix()
    n = g.n
    d = w.sum(axis=1)
    if kind is OperatorKind.ADJACENCY:
        m = w
    elif kind is OperatorKind.NORMALIZED_ADJACENCY:
        rho = _spectral_radius(w)
        if rho == 0:
            raise ValueError("adjacency has zero spectral radius; cannot normalize")
        m = w / rho
    elif kind is OperatorKind.LAPLACIAN:
        m = np.diag(d) - w
    elif kind is OperatorKind.NORMALIZED_LAPLACIAN:
        inv_sqrt = np.zeros(n)
        pos = d > 0
        inv_sqrt[pos] = 1.0 / np.sqrt(d[pos])
        m = np.diag(pos.astype(float)) - inv_sqrt[:, None] * w * inv_sqrt[None, :]
    elif kind is OperatorKind.RANDOM_WALK:
        if np.any(d <= 0):
            raise ValueError(f"random walk undefined: isolated vertices {np.flatnonzero(d <= 0).tolist()}")
        m = w / d[:, None]
    elif kind is OperatorKind.GRW:
        m = (np.eye(n) + w) / (1.0 + d)[:, None]
    else:
        return isometric_shift(w)
    return OperatorMatrix(kind, m)


def _gram_schmidt_extend(basis: np.ndarray, candidates: np.ndarray, total: int) -> np.ndarray:
    cols = [basis[:, i] for i in range(basis.shape[1])]
    for j in range(candidates.shape[1]):
        if len(cols) == total:
            break
        v = candidates[:, j].copy()
        for _ in range(2):
            for c in cols:
                v -= (c @ v) * c
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            cols.append(v / nv)
    if len(cols) < total:
        raise ArithmeticError("orthonormal completion failed")
    return np.column_stack(cols) if cols else np.zeros((basis.shape[0], 0))


def isometric_shift(a) -> OperatorMatrix:
    """Closest proper rotation to ``a``: S = U Q V^T with Q = diag(1, ..., 1, det(U V^T)).

    The SVD is assembled from symmetric eigendecompositions: right vectors
    from A^T A, left vectors paired as A v / sigma, and any null directions
    completed from the eigenvectors of A A^T.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    right = eig_sym(a.T @ a)
    order = np.argsort(-right.eigenvalues, kind="stable")
    v = right.eigenvectors[:, order]
    sigma = np.sqrt(np.clip(right.eigenvalues[order], 0.0, None))
    smax = sigma[0] if n else 0.0
    keep = sigma > 1e-12 * smax if smax > 0 else np.zeros(n, bool)
    u_r = (a @ v[:, keep]) / sigma[keep]
    u_r = _gram_schmidt_extend(np.zeros((n, 0)), u_r, int(keep.sum()))
    left = eig_sym(a @ a.T)
    u = _gram_schmidt_extend(u_r, left.eigenvectors, n)
    q = np.ones(n)
    q[-1] = np.sign(np.linalg.det(u @ v.T))
    s = (u * q) @ v.T
    return OperatorMatrix(OperatorKind.ISOMETRIC_SVD, s)


@dataclass(frozen=True)
class ReachMatrices:
    matrices: tuple[np.ndarray, ...]
    width: int

    def __getitem__(self, d: int) -> np.ndarray:
        """A_d for 1 <= d < width."""
        if not 1 <= d < self.width:
            raise IndexError(f"reach distance {d} outside [1, {self.width})")
        return self.matrices[d - 1]


def reach_matrices(g: Graph, width: int) -> ReachMatrices:
    """Indicators A_1..A_{D-1} of vertex pairs at shortest-walk distance exactly d.

    Each step takes the Boolean product with the adjacency and removes every
    pair already reached at a smaller distance (including the diagonal).
    """
    if width < 2:
        raise ValueError("width D must be at least 2")
    if g.directed:
        raise ValueError("reach matrices are defined for undirected graphs only")
    adj = (g.weight_matrix() > 0).astype(np.int64)
    reached = np.eye(g.n, dtype=bool) | adj.astype(bool)
    mats = [adj.astype(float)]
    prev = adj
    for _ in range(2, width):
        nxt = ((adj @ prev) > 0) & ~reached
        reached |= nxt
        prev = nxt.astype(np.int64)
        mats.append(nxt.astype(float))
    return ReachMatrices(tuple(mats), width)


def shortest_hops(g: Graph) -> np.ndarray:
    """All-pairs hop distance by BFS; unreachable pairs are -1."""
    adj = g.neighbors()
    dist = -np.ones((g.n, g.n), dtype=int)
    for s in range(g.n):
        dist[s, s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if dist[s, u] < 0:
                    dist[s, u] = dist[s, v] + 1
                    queue.append(u)
    return dist
