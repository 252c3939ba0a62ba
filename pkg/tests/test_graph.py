import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphsig.graph import (OperatorKind, connected_components, degrees, from_edge_list,
                            from_weight_matrix, geometric_weights, is_connected, isometric_shift,
                            operator_matrix, reach_matrices, shortest_hops)

from conftest import random_graph


@pytest.mark.parametrize("rows, n, msg", [
    ([(0, 3, 1.0)], 3, "outside"),
    ([(1, 1, 1.0)], 3, "self-loop"),
    ([(0, 1, -1.0)], 3, "invalid weight"),
    ([(0, 1, float("nan"))], 3, "invalid weight"),
    ([(0, 1, 1.0), (1, 0, 2.0)], 3, "duplicate"),
])
def test_edge_list_errors(rows, n, msg):
    with pytest.raises(ValueError, match=msg):
        from_edge_list(rows, n)


def test_directed_pair_is_not_duplicate():
    g = from_edge_list([(0, 1, 1.0), (1, 0, 2.0)], 2, directed=True)
    np.testing.assert_array_equal(g.weight_matrix(), [[0, 1], [2, 0]])


@given(st.integers(0, 5000), st.integers(2, 14))
def test_operator_invariants(seed, n):
    g = random_graph(np.random.default_rng(seed), n)
    L = operator_matrix(g, OperatorKind.LAPLACIAN).values
    np.testing.assert_allclose(L.sum(axis=1), 0, atol=1e-12)
    for kind in (OperatorKind.RANDOM_WALK, OperatorKind.GRW):
        np.testing.assert_allclose(operator_matrix(g, kind).values.sum(axis=1), 1, atol=1e-12)
    an = operator_matrix(g, OperatorKind.NORMALIZED_ADJACENCY).values
    assert np.max(np.abs(np.linalg.eigvalsh(an))) <= 1 + 1e-9
    ln = operator_matrix(g, OperatorKind.NORMALIZED_LAPLACIAN).values
    ev = np.linalg.eigvalsh(ln)
    assert ev.min() >= -1e-10 and ev.max() <= 2 + 1e-10


def test_normalized_laplacian_isolated_vertex():
    g = from_edge_list([(0, 1, 1.0)], 3)
    ln = operator_matrix(g, OperatorKind.NORMALIZED_LAPLACIAN).values
    np.testing.assert_allclose(ln, [[1, -1, 0], [-1, 1, 0], [0, 0, 0]])
    with pytest.raises(ValueError, match="isolated"):
        operator_matrix(g, OperatorKind.RANDOM_WALK)


def test_degrees_and_components():
    g = from_edge_list([(0, 1, 2.0), (2, 3, 0.5)], 4)
    np.testing.assert_array_equal(degrees(g), [2, 2, 0.5, 0.5])
    assert connected_components(g) == [[0, 1], [2, 3]]
    assert not is_connected(g)


def test_geometric_weights_threshold():
    pos = [((0.0, 0.0), 0.0), ((1.0, 0.0), 0.0), ((10.0, 0.0), 5.0)]
    g = geometric_weights(pos, alpha=1.0, beta=1.0, threshold=1e-3)
    w = g.weight_matrix()
    assert w[0, 1] == pytest.approx(np.exp(-1.0))
    assert w[0, 2] == 0.0


@given(st.integers(0, 5000), st.integers(2, 9))
def test_isometric_shift_is_rotation(seed, n):
    a = np.random.default_rng(seed).standard_normal((n, n))
    s = operator_matrix(from_weight_matrix(np.abs(a) * (1 - np.eye(n)), directed=True),
                        OperatorKind.ISOMETRIC_SVD).values
    np.testing.assert_allclose(s.T @ s, np.eye(n), atol=1e-9)
    np.testing.assert_allclose(s @ s.T, np.eye(n), atol=1e-9)
    assert np.linalg.det(s) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_isometric_shift_of_odd_cycle_is_itself(n):
    p = np.roll(np.eye(n), 1, axis=1)
    np.testing.assert_allclose(isometric_shift(p).values, p, atol=1e-10)


def test_isometric_shift_of_even_cycle_is_proper_rotation():
    p = np.roll(np.eye(4), 1, axis=1)
    s = isometric_shift(p).values
    assert np.linalg.det(p) == pytest.approx(-1.0)
    assert np.linalg.det(s) == pytest.approx(1.0)


@given(st.integers(0, 5000), st.integers(3, 14), st.integers(2, 6))
def test_reach_matrices_match_bfs_oracle(seed, n, width):
    g = random_graph(np.random.default_rng(seed), n, p=0.25)
    reach = reach_matrices(g, width)
    oracle = dict(nx.all_pairs_shortest_path_length(nx.from_numpy_array(g.weight_matrix())))
    for d in range(1, width):
        expect = np.array([[1.0 if oracle[i].get(j) == d else 0.0 for j in range(n)] for i in range(n)])
        np.testing.assert_array_equal(reach[d], expect)


def test_reach_errors():
    g = from_edge_list([(0, 1, 1.0)], 2)
    with pytest.raises(ValueError):
        reach_matrices(g, 1)
    with pytest.raises(ValueError):
        reach_matrices(from_edge_list([(0, 1, 1.0)], 2, directed=True), 3)
    with pytest.raises(IndexError):
        reach_matrices(g, 3)[3]


def test_shortest_hops_unreachable():
    g = from_edge_list([(0, 1, 1.0)], 3)
    h = shortest_hops(g)
    assert h[0, 1] == 1 and h[0, 2] == -1
