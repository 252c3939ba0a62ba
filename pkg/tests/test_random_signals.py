import numpy as np
import pytest

from graphsig.filters import FilterTaps
from graphsig.graph import operator_matrix
from graphsig.random_signals import (generate_gwss, generate_gwss_spectral, periodogram, sample_covariance,
                                     stationarity_check, theoretical_psd, white_noise)
from graphsig.spectral import basis_of

from conftest import random_graph


def test_white_noise_rows_depend_only_on_seed_and_index():
    a = white_noise(5, 3, seed=9)
    b = white_noise(5, 6, seed=9)
    np.testing.assert_array_equal(a, b[:3])
    assert not np.array_equal(a, white_noise(5, 3, seed=10))
    with pytest.raises(ValueError):
        white_noise(5, 0, 1)


def test_vertex_and_spectral_generation_agree():
    rng = np.random.default_rng(0)
    g = random_graph(rng, 10)
    L = operator_matrix(g, "laplacian").values
    b = basis_of(g)
    taps = FilterTaps([1.0, -0.2, 0.01])
    np.testing.assert_allclose(generate_gwss(taps, L, 4, seed=2),
                               generate_gwss_spectral(taps.response, b, 4, seed=2), atol=1e-10)


def test_periodogram_converges_to_psd():
    rng = np.random.default_rng(1)
    g = random_graph(rng, 20)
    b = basis_of(g)
    h = lambda lam: np.exp(-0.3 * lam)  # noqa: E731
    r = generate_gwss_spectral(h, b, 4000, seed=5)
    p = periodogram(r, b)
    assert np.max(np.abs(p - theoretical_psd(h, b.eigenvalues))) < 0.15


def test_covariance_of_stationary_process_is_diagonalized():
    rng = np.random.default_rng(2)
    b = basis_of(random_graph(rng, 8))
    R = b.evaluate(np.linspace(0.5, 2.0, 8))
    assert stationarity_check(R, b) < 1e-12
    assert stationarity_check(np.diag(np.arange(1.0, 9.0)), b) > 0.1
    assert stationarity_check(np.zeros((8, 8)), b) == 0.0


def test_stationarity_check_validation():
    b = basis_of(random_graph(np.random.default_rng(3), 4))
    with pytest.raises(ValueError):
        stationarity_check(np.eye(3), b)
    with pytest.raises(ValueError):
        stationarity_check(np.triu(np.ones((4, 4))), b)
    with pytest.raises(ValueError):
        periodogram(np.ones((2, 3)), b)


def test_sample_covariance_and_psd_from_taps():
    r = np.array([[1.0, 0.0], [0.0, 1.0]])
    np.testing.assert_allclose(sample_covariance(r), 0.5 * np.eye(2))
    np.testing.assert_allclose(theoretical_psd(FilterTaps([1.0, 1.0]), [0.0, 1.0]), [1.0, 4.0])
    np.testing.assert_allclose(theoretical_psd([2.0, -1.0], [0.0, 1.0]), [4.0, 1.0])
