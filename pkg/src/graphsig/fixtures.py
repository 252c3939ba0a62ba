"""Bundled reference data and the synthetic Swiss-roll graph."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .eigen import eig_sym
from .graph import Graph, OperatorKind, from_edge_list, from_weight_matrix, is_connected, operator_matrix

ADRIA8_LAMBDAS = (-2.0, -1.74, -1.28, -0.68, -0.41, 1.11, 1.81, 3.19)
ADRIA8_RESPONSE = (0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0, 1.0)

SWISSROLL_N = 100
SWISSROLL_SEED = 0
SWISSROLL_NEIGHBORS = 6
SWISSROLL_HEIGHT = 12.0
# (spectral index, first vertex, end vertex) of the piecewise test signal
SWISSROLL_COMPONENTS = ((8, 0, 30), (66, 30, 60), (27, 60, 100))

_CSV = {
    "montenegro16-W": "montenegro16_W.csv",
    "montenegro16-L": "montenegro16_L.csv",
    "adria8-lambdas": "adria8_lambdas.csv",
    "adria8-response": "adria8_response.csv",
    "swissroll100": "swissroll100_edges.csv",
}


def fixture_names() -> tuple[str, ...]:
    return tuple(_CSV)


def _read(name: str) -> str:
    return resources.files("graphsig.data").joinpath(name).read_text()


def load_fixture(name: str):
    """Matrix or vector for a matrix fixture; a Graph for ``swissroll100``."""
    if name not in _CSV:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(_CSV)}")
    text = _read(_CSV[name])
    if name == "swissroll100":
        from .io import parse_edge_csv
        return from_edge_list(parse_edge_csv(text), SWISSROLL_N)
    rows = [line for line in text.splitlines() if line.strip()]
    data = np.array([[float(v) for v in r.split(",")] for r in rows])
    return data.reshape(-1) if data.shape[1] == 1 else data


def montenegro_graph() -> Graph:
    return from_weight_matrix(load_fixture("montenegro16-W"), directed=False)


def _arc_length(t: np.ndarray) -> np.ndarray:
    # length of the spiral r = t from 0 to t
    return 0.5 * (t * np.sqrt(1 + t * t) + np.arcsinh(t))


def generate_swissroll(n: int = SWISSROLL_N, seed: int = SWISSROLL_SEED,
                       neighbors: int = SWISSROLL_NEIGHBORS, height: float = SWISSROLL_HEIGHT
                       ) -> list[tuple[int, int, float]]:
    """Edge list of a k-nearest-neighbor graph on a sampled Swiss roll.

    Distances are Euclidean in the unrolled coordinates (arc length, height),
    weights are exp(-r^2 / alpha) with alpha the mean squared neighbor
    distance, and vertices are renumbered by the Fiedler
    vector so that index order follows the roll.
    """
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(1.5 * np.pi, 4.5 * np.pi, n))
    z = rng.uniform(0.0, height, n)
    pts = np.column_stack([_arc_length(t), z])
    r2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1)
    np.fill_diagonal(r2, np.inf)
    keep = np.zeros((n, n), dtype=bool)
    nearest = np.argsort(r2, axis=1, kind="stable")[:, :neighbors]
    keep[np.repeat(np.arange(n), neighbors), nearest.ravel()] = True
    keep |= keep.T
    alpha = float(np.mean(r2[keep]))
    w = np.where(keep, np.exp(-np.where(keep, r2, 0.0) / alpha), 0.0)
    g = from_weight_matrix(w, directed=False)
    if not is_connected(g):
        raise RuntimeError("Swiss-roll sample is disconnected; choose another seed")
    fiedler = eig_sym(operator_matrix(g, OperatorKind.LAPLACIAN).values).eigenvectors[:, 1]
    order = np.argsort(fiedler, kind="stable")
    rank = np.empty(n, dtype=int)
    rank[order] = np.arange(n)
    edges = sorted((min(rank[s], rank[d]), max(rank[s], rank[d]), wt) for s, d, wt in g.edges)
    return [(int(s), int(d), float(wt)) for s, d, wt in edges]


def swissroll_graph() -> Graph:
    return load_fixture("swissroll100")


def swissroll_signal(b) -> np.ndarray:
    """Piecewise eigenvector signal, each piece scaled to unit energy on its vertices."""
    x = np.zeros(b.n)
    for k, lo, hi in SWISSROLL_COMPONENTS:
        piece = b.eigenvectors[lo:hi, k]
        x[lo:hi] = piece / np.linalg.norm(piece)
    return x


def noisy_swissroll(b, seed: int = 0, snr_db: float = 5.3) -> tuple[np.ndarray, np.ndarray]:
    """(clean, noisy) with white Gaussian noise rescaled to the exact input SNR."""
    from .random_signals import white_noise
    x = swissroll_signal(b)
    eps = white_noise(b.n, 1, seed)[0]
    eps *= np.sqrt(np.sum(x ** 2) / (np.sum(eps ** 2) * 10 ** (snr_db / 10)))
    return x, x + eps
