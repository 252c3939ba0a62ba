import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from graphsig.fixtures import swissroll_graph, swissroll_signal
from graphsig.graph import from_weight_matrix, operator_matrix
from graphsig.spectral import basis_of

settings.register_profile(
    "default", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def random_weights(rng, n, p=0.4, connected=True):
    """Symmetric weights in (0.1, 1]; a Hamiltonian path is added when ``connected``."""
    w = np.where(rng.random((n, n)) < p, rng.uniform(0.1, 1.0, (n, n)), 0.0)
    w = np.triu(w, 1)
    if connected:
        perm = rng.permutation(n)
        for a, b in zip(perm[:-1], perm[1:]):
            i, j = min(a, b), max(a, b)
            if w[i, j] == 0:
                w[i, j] = rng.uniform(0.1, 1.0)
    return w + w.T


def random_graph(rng, n, p=0.4, connected=True):
    return from_weight_matrix(random_weights(rng, n, p, connected), directed=False)


def random_bipartite(rng, n_e, n_h, p=0.5):
    """Bipartite weights between [0, n_e) and [n_e, n_e + n_h) with no isolated vertex."""
    n = n_e + n_h
    block = np.where(rng.random((n_e, n_h)) < p, rng.uniform(0.1, 1.0, (n_e, n_h)), 0.0)
    for i in range(n_e):
        if not block[i].any():
            block[i, rng.integers(n_h)] = rng.uniform(0.1, 1.0)
    for j in range(n_h):
        if not block[:, j].any():
            block[rng.integers(n_e), j] = rng.uniform(0.1, 1.0)
    w = np.zeros((n, n))
    w[:n_e, n_e:] = block
    w[n_e:, :n_e] = block.T
    return from_weight_matrix(w, directed=False)


@pytest.fixture(scope="session")
def swissroll():
    g = swissroll_graph()
    b = basis_of(g)
    L = operator_matrix(g, "laplacian").values
    return g, b, L, swissroll_signal(b)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
