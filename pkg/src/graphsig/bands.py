"""Spectral band-pass families for the LGFT and the Meyer-type graph wavelet."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

import numpy as np

SUM_ONE = "sum_one"
SUM_SQUARES_ONE = "sum_squares_one"

# Interval bounds of the wavelet-like raised-cosine layout (lambda_max = 7.63).
WAVELET_LIKE_BREAKPOINTS = (0.0, 0.004, 0.02, 0.07, 0.19, 0.44, 0.9, 1.7, 2.9, 4.8, 7.63)


def meyer_poly(x):
    """v(x) = x^4 (35 - 84x + 70x^2 - 20x^3), clipped to [0, 1]."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return x ** 4 * (35 - 84 * x + 70 * x ** 2 - 20 * x ** 3)


def _rise(shape: str, x: np.ndarray) -> np.ndarray:
    if shape == "hann2":
        return np.sin(0.5 * np.pi * x) ** 2
    if shape == "hann":
        return np.sin(0.5 * np.pi * x)
    return np.sin(0.5 * np.pi * meyer_poly(x))


def _fall(shape: str, x: np.ndarray) -> np.ndarray:
    if shape == "hann2":
        return np.cos(0.5 * np.pi * x) ** 2
    if shape == "hann":
        return np.cos(0.5 * np.pi * x)
    return np.cos(0.5 * np.pi * meyer_poly(x))


def _window_band(shape: str, bp: np.ndarray, k: int) -> Callable[[np.ndarray], np.ndarray]:
    """Band k on breakpoints bp: rising on (bp[k-1], bp[k]], falling on (bp[k], bp[k+1]].

    The first band is 1 at and below bp[0]; the last is 1 above bp[-1].
    """
    last = bp.size - 1

    def h(lam):
        lam = np.asarray(lam, dtype=float)
        out = np.zeros_like(lam)
        b = bp[k]
        if k == 0:
            out[lam <= b] = 1.0
        else:
            a = bp[k - 1]
            m = (lam > a) & (lam <= b)
            out[m] = _rise(shape, (lam[m] - a) / (b - a))
        if k == last:
            out[lam > b] = 1.0
        else:
            c = bp[k + 1]
            m = (lam > b) & (lam <= c)
            out[m] = _fall(shape, (lam[m] - b) / (c - b))
        return out
    return h


def _binomial_band(K: int, k: int, lambda_max: float):
    def h(lam):
        t = np.clip(np.asarray(lam, dtype=float) / lambda_max, 0.0, 1.0)
        return comb(K, k) * (1 - t) ** (K - k) * t ** k
    return h


@dataclass(frozen=True)
class BandFilterSet:
    """Sampled transfer functions H_k(lambda_p); ``values`` has shape (K+1, N)."""

    kind: str
    normalization: str
    lambdas: np.ndarray
    values: np.ndarray
    functions: tuple[Callable, ...]
    breakpoints: np.ndarray | None = None

    @property
    def n_bands(self) -> int:
        return self.values.shape[0]

    def normalization_error(self) -> float:
        if self.normalization == SUM_ONE:
            return float(np.max(np.abs(self.values.sum(axis=0) - 1.0)))
        return float(np.max(np.abs((self.values ** 2).sum(axis=0) - 1.0)))

    def resample(self, lambdas) -> "BandFilterSet":
        lam = np.asarray(lambdas, dtype=float)
        vals = np.array([f(lam) for f in self.functions])
        return BandFilterSet(self.kind, self.normalization, lam, vals, self.functions, self.breakpoints)

    def scaled(self, k: int, factor: float) -> "BandFilterSet":
        """Copy with band k multiplied by ``factor``."""
        fns = list(self.functions)
        f = fns[k]
        fns[k] = lambda lam, f=f: factor * f(lam)
        vals = self.values.copy()
        vals[k] *= factor
        return BandFilterSet(self.kind, self.normalization, self.lambdas, vals, tuple(fns), self.breakpoints)


def _check_breakpoints(bp) -> np.ndarray:
    bp = np.asarray(bp, dtype=float)
    if bp.ndim != 1 or bp.size < 2:
        raise ValueError("need at least two breakpoints (K >= 1)")
    if np.any(np.diff(bp) <= 0):
        raise ValueError("band bounds must be strictly increasing and chained")
    return bp


def build_band_filters(kind: str, lambdas, K: int | None = None, lambda_max: float | None = None,
                       breakpoints=None, normalization: str | None = None) -> BandFilterSet:
    """Band-pass family sampled at ``lambdas``.

    kind:
        ``binomial``: C(K,k) (1 - l/lmax)^(K-k) (l/lmax)^k, sums to one.
        ``raised_cosine``: sin^2/cos^2 transitions (sum to one); with
        ``normalization=sum_squares_one`` the squares are dropped.
        ``meyer``: sin/cos of (pi/2) v(x), squares sum to one.
        ``adaptive``: like ``meyer`` but ``breakpoints`` are required.
    Uniform breakpoints are ``linspace(0, lambda_max, K+1)`` unless given.
    """
    lam = np.asarray(lambdas, dtype=float)
    lmax = float(lambda_max if lambda_max is not None else np.max(lam))
    if lmax <= 0:
        raise ValueError("lambda_max must be positive")
    if kind == "binomial":
        if K is None or K < 1:
            raise ValueError("binomial bands need K >= 1")
        fns = tuple(_binomial_band(K, k, lmax) for k in range(K + 1))
        return BandFilterSet(kind, SUM_ONE, lam, np.array([f(lam) for f in fns]), fns)
    if kind == "adaptive" and breakpoints is None:
        raise ValueError("adaptive bands need explicit breakpoints")
    if breakpoints is None:
        if K is None or K < 1:
            raise ValueError("uniform bands need K >= 1")
        breakpoints = np.linspace(0.0, lmax, K + 1)
    bp = _check_breakpoints(breakpoints)
    if kind in ("raised_cosine", "hann"):
        norm = normalization or SUM_ONE
        shape = "hann2" if norm == SUM_ONE else "hann"
    elif kind in ("meyer", "adaptive"):
        norm = normalization or SUM_SQUARES_ONE
        if norm != SUM_SQUARES_ONE:
            raise ValueError("Meyer-type bands are normalized by squares")
        shape = "meyer"
    else:
        raise ValueError(f"unknown band kind {kind!r}")
    fns = tuple(_window_band(shape, bp, k) for k in range(bp.size))
    return BandFilterSet(kind, norm, lam, np.array([f(lam) for f in fns]), fns, bp)


def adaptive_breakpoints(X, lambdas, K: int, floor: float = 0.2) -> np.ndarray:
    """K+1 breakpoints at quantiles of spectral energy |X(lambda)|^2.

    The energy distribution is mixed with a uniform one (weight ``floor``) so
    bands stay finite where the signal has no content.
    """
    lam = np.asarray(lambdas, dtype=float)
    e = np.asarray(X, dtype=float) ** 2
    if K < 1:
        raise ValueError("K must be at least 1")
    order = np.argsort(lam)
    lam, e = lam[order], e[order]
    lmax = lam[-1]
    grid = np.linspace(0.0, lmax, 4097)
    mass = np.interp(grid, lam, np.cumsum(e) / max(e.sum(), 1e-300), left=0.0)
    cdf = (1 - floor) * mass + floor * grid / lmax
    cdf = np.maximum.accumulate(cdf)
    targets = np.linspace(0.0, 1.0, K + 1)
    bp = np.interp(targets, cdf + np.arange(grid.size) * 1e-15, grid)
    bp[0], bp[-1] = 0.0, lmax
    return _check_breakpoints(bp)


def band_to_eigen_axis(S, breakpoints, lambdas) -> np.ndarray:
    """Copy band k's column to every p with lambda_p in ((a_k+b_k)/2, (b_k+c_k)/2]."""
    S = np.asarray(S, dtype=float)
    bp = _check_breakpoints(breakpoints)
    lam = np.asarray(lambdas, dtype=float)
    mids = 0.5 * (bp[:-1] + bp[1:])
    band = np.searchsorted(mids, lam, side="left")
    return S[:, band]


@dataclass(frozen=True)
class SgwtSpec:
    progression: float
    n_scales: int
    lambda_max: float

    def __post_init__(self):
        if not self.progression > 1:
            raise ValueError("progression M must exceed 1")
        if self.n_scales < 1:
            raise ValueError("need at least one scale")
        if not self.lambda_max > 0:
            raise ValueError("lambda_max must be positive")

    @property
    def q(self) -> float:
        return 1.0 / (self.progression - 1.0)

    @property
    def scales(self) -> np.ndarray:
        i = np.arange(1, self.n_scales + 1)
        return self.progression ** i / self.lambda_max

    def wavelet(self, i: int) -> Callable[[np.ndarray], np.ndarray]:
        """H(s_i lambda), i = 1..K."""
        if not 1 <= i <= self.n_scales:
            raise IndexError(f"scale index {i} outside [1, {self.n_scales}]")
        s, M, q = self.scales[i - 1], self.progression, self.q

        def h(lam):
            x = s * np.asarray(lam, dtype=float)
            out = np.zeros_like(x)
            up = (x > 1) & (x <= M)
            out[up] = np.sin(0.5 * np.pi * meyer_poly(q * (x[up] - 1)))
            if i == 1:
                out[x > M] = 1.0
            else:
                down = (x > M) & (x <= M * M)
                out[down] = np.cos(0.5 * np.pi * meyer_poly(q * (x[down] / M - 1)))
            return out
        return h

    def scale_function(self) -> Callable[[np.ndarray], np.ndarray]:
        """G(lambda): 1 for s_K lambda <= 1, cosine taper on 1 < s_K lambda <= M."""
        s, M, q = self.scales[-1], self.progression, self.q

        def g(lam):
            x = s * np.asarray(lam, dtype=float)
            out = np.zeros_like(x)
            out[x <= 1] = 1.0
            m = (x > 1) & (x <= M)
            out[m] = np.cos(0.5 * np.pi * meyer_poly(q * (x[m] - 1)))
            return out
        return g

    def functions(self) -> tuple[Callable, ...]:
        """Channel 0 is the scale function; channel i is the wavelet at scale s_i."""
        return (self.scale_function(),) + tuple(self.wavelet(i) for i in range(1, self.n_scales + 1))


def sgwt_bank(spec: SgwtSpec, lambdas) -> BandFilterSet:
    lam = np.asarray(lambdas, dtype=float)
    fns = spec.functions()
    return BandFilterSet("sgwt_meyer", SUM_SQUARES_ONE, lam, np.array([f(lam) for f in fns]), fns)
