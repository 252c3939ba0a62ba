"""Two-channel quadrature-mirror filter bank on bipartite graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .eigen import SpectralBasis
from .graph import Graph, from_edge_list


@dataclass(frozen=True)
class Bipartition:
    set_e: tuple[int, ...]
    set_h: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.set_e) + len(self.set_h)

    def signature(self) -> np.ndarray:
        """Diagonal of J_E: +1 on E, -1 on H."""
        j = -np.ones(self.n)
        j[list(self.set_e)] = 1.0
        return j


def check_bipartite(g: Graph) -> Bipartition:
    """Two-color the graph by BFS; the lowest vertex of each component goes to E."""
    if g.directed:
        raise ValueError("bipartition is defined for undirected graphs")
    adj = g.neighbors()
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    raise ValueError(f"graph is not bipartite: odd cycle through edge ({v}, {u})")
    e = tuple(i for i in range(g.n) if color[i] == 0)
    h = tuple(i for i in range(g.n) if color[i] == 1)
    return Bipartition(e, h)


def _lowpass(kind: str):
    if kind in ("sqrt", "sqrt_two_minus_lambda"):
        return lambda lam: np.sqrt(np.clip(2.0 - lam, 0.0, None))
    if kind in ("cos", "cosine"):
        return lambda lam: np.sqrt(2.0) * np.cos(np.pi * lam / 4.0)
    raise ValueError(f"unknown lowpass kind {kind!r}")


@dataclass(frozen=True)
class QmfBank:
    kind: str
    lambdas: np.ndarray
    h_low: np.ndarray
    h_high: np.ndarray
    g_low: np.ndarray
    g_high: np.ndarray

    def design_residual(self) -> float:
        """max |H_L(lambda)^2 + H_L(2 - lambda)^2 - 2|."""
        hl = _lowpass(self.kind)
        return float(np.max(np.abs(hl(self.lambdas) ** 2 + hl(2 - self.lambdas) ** 2 - 2)))

    def alias_residual(self) -> float:
        """max |G_L(l) H_L(2 - l) - G_H(l) H_H(2 - l)| over the sampled eigenvalues."""
        hl = _lowpass(self.kind)
        lam = self.lambdas
        h_low_m = hl(2 - lam)
        h_high_m = hl(lam)
        return float(np.max(np.abs(self.g_low * h_low_m - self.g_high * h_high_m)))


def qmf_from_lowpass(kind: str, lambdas, tol: float = 1e-9, snap: float = 1e-12) -> QmfBank:
    """Bank with G_L = H_L, H_H(l) = H_L(2 - l), G_H = H_H.

    Eigenvalues within ``snap`` of 0 or 2 are set to the endpoint: the square
    root low-pass turns roundoff eps there into an error of sqrt(eps).
    """
    lam = np.asarray(lambdas, dtype=float)
    if np.any(lam < -tol) or np.any(lam > 2 + tol):
        raise ValueError("normalized-Laplacian eigenvalues must lie in [0, 2]")
    lam = np.clip(lam, 0.0, 2.0)
    lam = np.where(lam < snap, 0.0, np.where(lam > 2.0 - snap, 2.0, lam))
    hl = _lowpass(kind)
    h_low = hl(lam)
    h_high = hl(2.0 - lam)
    return QmfBank(kind, lam, h_low, h_high, h_low.copy(), h_high.copy())


def _apply(b: SpectralBasis, response: np.ndarray, x: np.ndarray) -> np.ndarray:
    u = b.eigenvectors
    return u @ (response * (u.T @ x))


def fb_analyze(x, bank: QmfBank, part: Bipartition, b: SpectralBasis) -> tuple[np.ndarray, np.ndarray]:
    """Channel outputs f_L = 1/2 G_L (I + J_E) H_L x and f_H = 1/2 G_H (I - J_E) H_H x.

    Both channels are returned at full length N (already upsampled and
    synthesis-filtered), so reconstruction is their sum.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (b.n,) or part.n != b.n or bank.lambdas.shape != (b.n,):
        raise ValueError("signal, partition, bank and basis sizes do not agree")
    j = part.signature()
    low = _apply(b, bank.h_low, x)
    high = _apply(b, bank.h_high, x)
    f_low = 0.5 * _apply(b, bank.g_low, low + j * low)
    f_high = 0.5 * _apply(b, bank.g_high, high - j * high)
    return f_low, f_high


def fb_channels(x, bank: QmfBank, part: Bipartition, b: SpectralBasis) -> tuple[np.ndarray, np.ndarray]:
    """Downsampled analysis coefficients: (H_L x) on E and (H_H x) on H."""
    x = np.asarray(x, dtype=float)
    low = _apply(b, bank.h_low, x)
    high = _apply(b, bank.h_high, x)
    return low[list(part.set_e)], high[list(part.set_h)]


def fb_synthesize(f_low, f_high) -> np.ndarray:
    f_low = np.asarray(f_low, dtype=float)
    f_high = np.asarray(f_high, dtype=float)
    if f_low.shape != f_high.shape:
        raise ValueError(f"channel lengths differ: {f_low.shape} vs {f_high.shape}")
    return f_low + f_high


def haar_graph(n: int = 16) -> Graph:
    """Perfect matching (0,1), (2,3), ... with unit weights."""
    if n % 2:
        raise ValueError("Haar pair graph needs an even vertex count")
    return from_edge_list([(i, i + 1, 1.0) for i in range(0, n, 2)], n)


def verify_partition(g: Graph, part: Bipartition) -> None:
    """Raise if the sets overlap, miss vertices, or contain an internal edge."""
    e, h = set(part.set_e), set(part.set_h)
    if e & h or len(e | h) != g.n or not (e | h) <= set(range(g.n)):
        raise ValueError("partition does not split the vertex set into two disjoint parts")
    for s, d, wt in g.edges:
        if wt > 0 and ((s in e) == (d in e)):
            raise ValueError(f"edge ({s}, {d}) lies inside one part")
