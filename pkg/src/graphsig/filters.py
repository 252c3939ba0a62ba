"""Systems on graphs: polynomial filters, spectral design, Chebyshev series, denoising."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse
from numpy.polynomial import Polynomial
from numpy.polynomial import chebyshev as npcheb

from .eigen import SpectralBasis
from .spectral import distinct_eigenvalues

CHEB_NODES = 2048
_SPARSE_DENSITY = 0.25


@dataclass(frozen=True)
class FilterTaps:
    taps: np.ndarray
    operator_kind: str = "generic"

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.taps, dtype=float))
        if t.ndim != 1 or t.size < 1 or not np.all(np.isfinite(t)):
            raise ValueError("taps must be a nonempty finite vector")
        object.__setattr__(self, "taps", t)

    def response(self, lambdas) -> np.ndarray:
        """H(lambda) = sum_m h_m lambda^m."""
        return np.polynomial.polynomial.polyval(np.asarray(lambdas, dtype=float), self.taps)


@dataclass(frozen=True)
class ChebyshevSeries:
    """P(z) = c_0/2 + sum_{m>=1} c_m T_m(z), z the image of lambda in [-1, 1]."""

    coeffs: np.ndarray
    lambda_min: float
    lambda_max: float

    def __post_init__(self):
        if not self.lambda_max > self.lambda_min:
            raise ValueError("lambda_max must exceed lambda_min")
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def a(self) -> float:
        return 2.0 / (self.lambda_max - self.lambda_min)

    @property
    def b(self) -> float:
        return -(self.lambda_max + self.lambda_min) / (self.lambda_max - self.lambda_min)

    def _numpy_coeffs(self) -> np.ndarray:
        c = self.coeffs.copy()
        c[0] *= 0.5
        return c

    def __call__(self, lambdas) -> np.ndarray:
        z = self.a * np.asarray(lambdas, dtype=float) + self.b
        return npcheb.chebval(z, self._numpy_coeffs())

    def z_monomial(self) -> np.ndarray:
        """Power-series coefficients in z (lowest degree first)."""
        return npcheb.cheb2poly(self._numpy_coeffs())

    def lambda_monomial(self) -> np.ndarray:
        """Power-series coefficients in lambda, i.e. vertex-domain taps for L^m."""
        p = Polynomial(self.z_monomial())(Polynomial([self.b, self.a]))
        out = np.zeros(self.coeffs.size)
        out[: p.coef.size] = p.coef
        return out


def _as_operator(s, n: int):
    m = np.asarray(s, dtype=float)
    if m.shape != (n, n):
        raise ValueError(f"operator shape {m.shape} does not match signal length {n}")
    if np.count_nonzero(m) < _SPARSE_DENSITY * n * n:
        return scipy.sparse.csr_matrix(m)
    return m


def apply_taps(f: FilterTaps | np.ndarray, s, x) -> np.ndarray:
    """y = sum_m h_m S^m x by repeated multiplication (S^m is never formed)."""
    taps = f.taps if isinstance(f, FilterTaps) else FilterTaps(f).taps
    x = np.asarray(x, dtype=float)
    op = _as_operator(s, x.shape[0])
    v = x.copy()
    y = taps[0] * v
    for h in taps[1:]:
        v = op @ v
        y = y + h * v
    return np.asarray(y)


def design_response(g, lambdas, order_m: int, mode: str = "least_squares") -> FilterTaps:
    """Taps h_0..h_{M-1} whose response fits g at the eigenvalues.

    Eigenvalues closer than 1e-9 * max|lambda| are merged first (their target
    values averaged). ``exact`` mode needs M equal to the number of distinct
    eigenvalues and interpolates; ``least_squares`` uses an SVD pseudo-inverse
    with cutoff max(M, N) * eps * sigma_max.
    """
    g = np.asarray(g, dtype=float)
    lam = np.asarray(lambdas, dtype=float)
    if g.shape != lam.shape:
        raise ValueError(f"response length {g.shape} does not match eigenvalue count {lam.shape}")
    if order_m < 1:
        raise ValueError("order M must be at least 1")
    if order_m > lam.size:
        raise ValueError(f"order M={order_m} exceeds the number of eigenvalues {lam.size}")
    reps, group = distinct_eigenvalues(lam)
    target = np.bincount(group, weights=g) / np.bincount(group)
    v = np.vander(reps, order_m, increasing=True)
    if mode == "exact":
        if order_m != reps.size:
            raise ValueError(f"exact mode needs M = {reps.size} (distinct eigenvalues), got {order_m}")
        spread = np.abs(g - target[group]).max()
        if spread > 1e-9 * max(1.0, np.abs(g).max()):
            raise ValueError("response takes different values on a repeated eigenvalue")
        if np.linalg.cond(v) > 1.0 / np.finfo(float).eps:
            raise np.linalg.LinAlgError("Vandermonde system is numerically singular")
        return FilterTaps(np.linalg.solve(v, target))
    if mode not in ("least_squares", "ls"):
        raise ValueError(f"unknown design mode {mode!r}")
    u, sig, vt = np.linalg.svd(v, full_matrices=False)
    cutoff = max(v.shape) * np.finfo(float).eps * sig[0]
    inv = np.where(sig > cutoff, 1.0 / np.where(sig > cutoff, sig, 1.0), 0.0)
    return FilterTaps(vt.T @ (inv * (u.T @ target)))


def step_response(edge: float) -> Callable[[np.ndarray], np.ndarray]:
    """Ideal high-pass step: 0 below ``edge``, 1/2 at it, 1 above."""
    def g(lam):
        lam = np.asarray(lam, dtype=float)
        return np.where(lam > edge, 1.0, np.where(lam == edge, 0.5, 0.0))
    return g


def _ramped(G: Callable, width: float) -> Callable:
    # moving average over [lambda - w/2, lambda + w/2]; turns jumps into linear ramps
    offsets = (np.arange(64) + 0.5) / 64 - 0.5

    def smooth(lam):
        lam = np.asarray(lam, dtype=float)
        return np.mean(G(lam[..., None] + width * offsets), axis=-1)
    return smooth


def chebyshev_fit(G: Callable, lambda_min: float, lambda_max: float, order: int,
                  n_nodes: int = CHEB_NODES, ramp_width: float | None = None) -> ChebyshevSeries:
    """Chebyshev coefficients c_m = (2/pi) int_0^pi cos(m t) G(lambda(cos t)) dt.

    The integral uses an ``n_nodes`` midpoint rule in t. ``ramp_width``
    optionally smooths jumps in G before fitting.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if not lambda_max > lambda_min:
        raise ValueError("lambda_max must exceed lambda_min")
    if ramp_width:
        G = _ramped(G, ramp_width)
    theta = (np.arange(n_nodes) + 0.5) * np.pi / n_nodes
    lam = 0.5 * ((lambda_max - lambda_min) * np.cos(theta) + lambda_max + lambda_min)
    samples = np.asarray(G(lam), dtype=float)
    if not np.all(np.isfinite(samples)):
        raise ValueError("desired response produced non-finite samples")
    m = np.arange(order + 1)
    coeffs = (2.0 / n_nodes) * np.cos(np.outer(m, theta)) @ samples
    return ChebyshevSeries(coeffs, lambda_min, lambda_max)


def chebyshev_apply(s: ChebyshevSeries, L, x) -> np.ndarray:
    """y = P(L) x via T_m = 2(aL + b)T_{m-1} - T_{m-2} applied to vectors."""
    x = np.asarray(x, dtype=float)
    op = _as_operator(L, x.shape[0])
    a, b = s.a, s.b

    def shifted(v):
        return a * np.asarray(op @ v) + b * v

    c = s.coeffs
    t_prev = x
    y = 0.5 * c[0] * x
    if c.size == 1:
        return y
    t_cur = shifted(x)
    y = y + c[1] * t_cur
    for cm in c[2:]:
        t_prev, t_cur = t_cur, 2.0 * shifted(t_cur) - t_prev
        y = y + cm * t_cur
    return y


def spectral_filter(x, b: SpectralBasis, response) -> np.ndarray:
    """U diag(H) U^T x for a sampled response vector or a callable of lambda."""
    h = response(b.eigenvalues) if callable(response) else np.asarray(response, dtype=float)
    u = b.eigenvectors
    X = u.T @ np.asarray(x, dtype=float)
    return u @ (h[:, None] * X if X.ndim == 2 else h * X)


def inverse_transfer(g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    small = np.abs(g) <= 1e-12
    if np.any(small):
        raise ZeroDivisionError(f"response vanishes at indices {np.flatnonzero(small).tolist()}")
    return 1.0 / g


def denoise_response(lambdas, alpha: float, beta: float | None = None,
                     quadratic: bool = False) -> np.ndarray:
    if alpha < 0 or (beta is not None and beta < 0):
        raise ValueError("regularization parameters must be nonnegative")
    lam = np.asarray(lambdas, dtype=float)
    if beta is not None:
        return 1.0 / (1.0 + 2 * alpha * lam + 2 * beta * lam ** 2)
    if quadratic:
        return 1.0 / (1.0 + 2 * alpha * lam ** 2)
    return 1.0 / (1.0 + 2 * alpha * lam)


def denoise(x, b: SpectralBasis, alpha: float, beta: float | None = None,
            quadratic: bool = False) -> np.ndarray:
    """Closed-form minimizer of ||y - x||^2 + 2 alpha y^T L y (and its variants)."""
    return spectral_filter(x, b, denoise_response(b.eigenvalues, alpha, beta, quadratic))


def taubin_response(lambdas, alpha: float, beta: float, iterations: int) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    return ((1 + beta * lam) * (1 - alpha * lam)) ** iterations


def taubin(x, L, alpha: float, beta: float, iterations: int) -> np.ndarray:
    """K rounds of y <- (I + beta L)(I - alpha L) y."""
    if iterations < 1:
        raise ValueError("iteration count K must be at least 1")
    y = np.asarray(x, dtype=float)
    op = _as_operator(L, y.shape[0])
    for _ in range(iterations):
        y = y - alpha * np.asarray(op @ y)
        y = y + beta * np.asarray(op @ y)
    return y


def wiener_gain(h, p_s, p_eps) -> np.ndarray:
    """G = H p_s / (H^2 p_s + p_eps)."""
    h, p_s, p_eps = (np.asarray(v, dtype=float) for v in (h, p_s, p_eps))
    den = h * h * p_s + p_eps
    if np.any(den == 0):
        raise ZeroDivisionError("Wiener gain denominator vanishes")
    return h * p_s / den
