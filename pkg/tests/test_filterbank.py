import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphsig.filterbank import (Bipartition, check_bipartite, fb_analyze, fb_channels, fb_synthesize,
                                 haar_graph, qmf_from_lowpass, verify_partition)
from graphsig.graph import OperatorKind, from_edge_list
from graphsig.spectral import basis_of

from conftest import random_bipartite


def _roundtrip(g, kind, x):
    part = check_bipartite(g)
    b = basis_of(g, OperatorKind.NORMALIZED_LAPLACIAN)
    bank = qmf_from_lowpass(kind, b.eigenvalues)
    return fb_synthesize(*fb_analyze(x, bank, part, b)), bank


@pytest.mark.parametrize("kind", ["sqrt", "cos"])
def test_haar_perfect_reconstruction(kind):
    x = np.random.default_rng(0).standard_normal(16)
    y, bank = _roundtrip(haar_graph(16), kind, x)
    assert np.max(np.abs(y - x)) <= 1e-8
    assert bank.design_residual() <= 1e-12


def test_haar_channels_are_averages_and_differences():
    g = haar_graph(16)
    x = np.random.default_rng(1).standard_normal(16)
    part = check_bipartite(g)
    b = basis_of(g, OperatorKind.NORMALIZED_LAPLACIAN)
    f_low, f_high = fb_analyze(x, qmf_from_lowpass("sqrt", b.eigenvalues), part, b)
    avg = np.repeat(0.5 * (x[0::2] + x[1::2]), 2)
    dif = 0.5 * (x[0::2] - x[1::2])
    np.testing.assert_allclose(f_low, avg, atol=1e-10)
    np.testing.assert_allclose(f_high, np.ravel(np.column_stack([dif, -dif])), atol=1e-10)


@given(st.integers(0, 5000), st.integers(2, 8), st.integers(2, 8), st.sampled_from(["sqrt", "cos"]))
def test_random_bipartite_reconstruction(seed, n_e, n_h, kind):
    rng = np.random.default_rng(seed)
    g = random_bipartite(rng, n_e, n_h)
    x = rng.standard_normal(g.n)
    y, bank = _roundtrip(g, kind, x)
    assert np.max(np.abs(y - x)) <= 1e-8
    assert bank.alias_residual() <= 1e-10


@given(st.integers(0, 5000), st.integers(2, 7), st.integers(2, 7))
def test_bipartition_matches_networkx(seed, n_e, n_h):
    g = random_bipartite(np.random.default_rng(seed), n_e, n_h)
    part = check_bipartite(g)
    verify_partition(g, part)
    assert nx.is_bipartite(nx.from_numpy_array(g.weight_matrix()))
    assert 0 in part.set_e


def test_odd_cycle_rejected():
    g = from_edge_list([(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)], 3)
    with pytest.raises(ValueError, match="not bipartite"):
        check_bipartite(g)


def test_verify_partition_rejects_internal_edge():
    g = from_edge_list([(0, 1, 1.0)], 2)
    with pytest.raises(ValueError):
        verify_partition(g, Bipartition((0, 1), ()))
    with pytest.raises(ValueError):
        verify_partition(g, Bipartition((0,), (0, 1)))


def test_spectral_folding_on_bipartite_graph():
    g = random_bipartite(np.random.default_rng(7), 4, 5)
    lam = basis_of(g, OperatorKind.NORMALIZED_LAPLACIAN).eigenvalues
    np.testing.assert_allclose(np.sort(2 - lam), lam, atol=1e-10)


def test_qmf_rejects_out_of_range_eigenvalues():
    with pytest.raises(ValueError):
        qmf_from_lowpass("sqrt", np.array([0.0, 2.5]))
    with pytest.raises(ValueError):
        qmf_from_lowpass("triangle", np.array([0.0, 1.0]))


def test_channels_are_downsampled():
    g = haar_graph(8)
    part = check_bipartite(g)
    b = basis_of(g, OperatorKind.NORMALIZED_LAPLACIAN)
    lo, hi = fb_channels(np.arange(8.0), qmf_from_lowpass("cos", b.eigenvalues), part, b)
    assert lo.shape == (4,) and hi.shape == (4,)


def test_haar_graph_requires_even():
    with pytest.raises(ValueError):
        haar_graph(5)
    with pytest.raises(ValueError):
        fb_synthesize(np.ones(2), np.ones(3))
