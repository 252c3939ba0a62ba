import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphsig.bands import (SUM_ONE, SUM_SQUARES_ONE, WAVELET_LIKE_BREAKPOINTS, SgwtSpec,
                            adaptive_breakpoints, band_to_eigen_axis, build_band_filters, meyer_poly,
                            sgwt_bank)
from graphsig.vertex_frequency import band_taps

GRID = np.linspace(0.0, 7.63, 2001)

# Hann K=10 bank on [0, 7.63], order-5 monomial coefficients (rows = bands 0..10)
HANN10_TAPS = np.array([
    [1.062, -1.925, 1.168, -0.3115, 0.03776, -0.001702],
    [-0.002, 1.773, -1.655, 0.5357, -0.07250, 0.003508],
    [-0.154, 1.016, -0.601, 0.1295, -0.01155, 0.000349],
    [0.005, -0.301, 0.621, -0.2674, 0.04200, -0.002225],
    [0.089, -0.748, 0.869, -0.3042, 0.04217, -0.002040],
    [0.060, -0.381, 0.319, -0.0704, 0.00461, 0.000000],
    [-0.024, 0.277, -0.430, 0.2055, -0.03570, 0.002040],
    [-0.076, 0.598, -0.714, 0.2814, -0.04292, 0.002225],
    [-0.027, 0.159, -0.122, 0.0198, 0.00177, -0.000349],
    [0.087, -0.699, 0.868, -0.3662, 0.06140, -0.003508],
    [-0.026, 0.220, -0.293, 0.1333, -0.02435, 0.001536],
])


def test_meyer_polynomial_anchor_points():
    np.testing.assert_allclose(meyer_poly([0.0, 0.5, 1.0]), [0.0, 0.5, 1.0], atol=1e-15)


@given(st.floats(0.0, 1.0))
def test_meyer_polynomial_symmetry(x):
    assert meyer_poly(x) + meyer_poly(1 - x) == pytest.approx(1.0, abs=1e-12)


def test_binomial_k1():
    b = build_band_filters("binomial", GRID, K=1)
    np.testing.assert_allclose(b.values[0], 1 - GRID / 7.63, atol=1e-15)
    np.testing.assert_allclose(b.values[1], GRID / 7.63, atol=1e-15)


@pytest.mark.parametrize("kind, K, norm", [
    ("binomial", 6, SUM_ONE),
    ("raised_cosine", 10, SUM_ONE),
    ("raised_cosine", 25, SUM_ONE),
    ("raised_cosine", 10, SUM_SQUARES_ONE),
    ("meyer", 10, SUM_SQUARES_ONE),
])
def test_declared_normalization_holds(kind, K, norm):
    kw = {"normalization": norm} if kind == "raised_cosine" else {}
    b = build_band_filters(kind, GRID, K=K, **kw)
    assert b.normalization == norm
    assert b.normalization_error() <= 1e-9
    assert b.values.shape == (K + 1, GRID.size)


def test_wavelet_like_breakpoints():
    b = build_band_filters("raised_cosine", GRID, breakpoints=WAVELET_LIKE_BREAKPOINTS)
    assert b.n_bands == 11
    assert b.normalization_error() <= 1e-9
    # band k peaks at its breakpoint
    for k, bp in enumerate(WAVELET_LIKE_BREAKPOINTS):
        assert b.functions[k](np.array([bp]))[0] == pytest.approx(1.0)


@given(st.lists(st.floats(0.01, 2.0), min_size=1, max_size=8))
def test_meyer_on_arbitrary_chained_bounds(gaps):
    bp = np.concatenate([[0.0], np.cumsum(gaps)])
    lam = np.linspace(0, bp[-1], 301)
    b = build_band_filters("meyer", lam, breakpoints=bp)
    assert b.normalization_error() <= 1e-9


@pytest.mark.parametrize("kwargs", [
    {"kind": "raised_cosine", "K": 0},
    {"kind": "binomial", "K": 0},
    {"kind": "meyer", "breakpoints": [0.0, 2.0, 1.0]},
    {"kind": "adaptive"},
    {"kind": "wavelet", "K": 3},
    {"kind": "meyer", "K": 3, "normalization": SUM_ONE},
])
def test_band_errors(kwargs):
    with pytest.raises(ValueError):
        build_band_filters(lambdas=GRID, **kwargs)


def test_adaptive_breakpoints_follow_energy():
    lam = np.linspace(0, 8, 81)
    X = np.where(lam < 2, 1.0, 0.0)
    bp = adaptive_breakpoints(X, lam, 6, floor=0.1)
    assert bp[0] == 0 and bp[-1] == 8
    assert np.sum(bp < 2) > np.sum(bp > 2)
    b = build_band_filters("adaptive", lam, breakpoints=bp)
    assert b.normalization_error() <= 1e-9


def test_band_to_eigen_axis_relabels():
    S = np.arange(6.0).reshape(2, 3)
    lam = np.array([0.0, 0.4, 0.6, 1.4, 1.6, 2.0])
    out = band_to_eigen_axis(S, [0.0, 1.0, 2.0], lam)
    np.testing.assert_array_equal(out[0], [0, 0, 1, 1, 2, 2])


def test_scaled_band():
    b = build_band_filters("raised_cosine", GRID, K=4).scaled(2, 1.5)
    assert b.normalization_error() > 0.1


@pytest.mark.parametrize("M, K", [(2, 9), (2, 4), (1.5, 6), (3, 3)])
def test_sgwt_partition_of_unity(M, K):
    spec = SgwtSpec(M, K, 7.63)
    b = sgwt_bank(spec, np.linspace(0, 7.63 * 1.5, 4001))
    np.testing.assert_allclose((b.values ** 2).sum(axis=0), 1.0, atol=1e-9)


def test_sgwt_scales_and_adjacent_overlap():
    spec = SgwtSpec(2, 9, 8.0)
    assert spec.scales[0] == pytest.approx(2 / 8.0)
    np.testing.assert_allclose(spec.scales[1:] / spec.scales[:-1], 2.0)
    lam = np.linspace(0, 8, 3001)
    h = [spec.wavelet(i)(lam) for i in range(1, 10)]
    for i in range(8):
        # wavelet i rises and wavelet i+1 falls on 1 < s_i lambda <= M
        x = spec.scales[i] * lam
        overlap = (x > 1) & (x <= 2)
        np.testing.assert_allclose(h[i][overlap] ** 2 + h[i + 1][overlap] ** 2, 1.0, atol=1e-12)


def test_sgwt_scale_function_is_one_at_low_frequencies():
    spec = SgwtSpec(2, 9, 8.0)
    g = spec.scale_function()
    lam = np.linspace(0, 8 / 2 ** 9, 20)
    np.testing.assert_allclose(g(lam), 1.0)


@pytest.mark.parametrize("M, K, lmax", [(1.0, 3, 1.0), (2.0, 0, 1.0), (2.0, 3, 0.0)])
def test_sgwt_spec_errors(M, K, lmax):
    with pytest.raises(ValueError):
        SgwtSpec(M, K, lmax)
    with pytest.raises(IndexError):
        SgwtSpec(2, 3, 1.0).wavelet(4)


def test_hann10_taps_interior_bands():
    bank = build_band_filters("raised_cosine", [0.0, 7.63], K=10)
    taps = band_taps(bank, 5)
    np.testing.assert_allclose(taps[1:10], HANN10_TAPS[1:10], atol=5e-3)


@pytest.mark.xfail(strict=True, reason="edge-band rows differ by 0.01-0.04 from the reference taps")
def test_hann10_taps_edge_bands():
    bank = build_band_filters("raised_cosine", [0.0, 7.63], K=10)
    taps = band_taps(bank, 5)
    np.testing.assert_allclose(taps[[0, 10]], HANN10_TAPS[[0, 10]], atol=5e-3)
