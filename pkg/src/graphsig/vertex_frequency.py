"""Localized graph Fourier transforms, wavelets, inversions and vertex-frequency distributions."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bands import SUM_ONE, SUM_SQUARES_ONE, BandFilterSet, SgwtSpec, sgwt_bank
from .eigen import SpectralBasis
from .filters import chebyshev_apply, chebyshev_fit
from .graph import Graph, reach_matrices, shortest_hops

CONDITION_TOL = 1e-6
SMOOTHNESS_FLOOR = 1e-12
KERNEL_TOL = 1e-12


class InversionConditionError(ValueError):
    """The normalization an inversion mode relies on does not hold."""

    def __init__(self, condition: str, deviation: float):
        super().__init__(f"inversion condition {condition} violated: max deviation {deviation:.3e}")
        self.condition = condition
        self.deviation = deviation


@dataclass(frozen=True)
class SpectralExponential:
    tau: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if not np.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")


@dataclass(frozen=True)
class VertexNeighborhood:
    """Window samples g(0..D-1) over hop distance; width D = len(g)."""

    samples: tuple[float, ...]

    def __post_init__(self):
        g = tuple(float(v) for v in self.samples)
        if len(g) < 1:
            raise ValueError("vertex window width D must be at least 1")
        if not all(np.isfinite(g)):
            raise ValueError("window samples must be finite")
        object.__setattr__(self, "samples", g)

    @property
    def width(self) -> int:
        return len(self.samples)


def hann_vertex_window(width: int) -> VertexNeighborhood:
    """g(d) = (1 + cos(pi d / D)) / 2 for d = 0..D-1."""
    if width < 1:
        raise ValueError("width D must be at least 1")
    d = np.arange(width)
    return VertexNeighborhood(tuple(0.5 * (1 + np.cos(np.pi * d / width))))


def rectangular_vertex_window(width: int) -> VertexNeighborhood:
    if width < 1:
        raise ValueError("width D must be at least 1")
    return VertexNeighborhood((1.0,) * width)


@dataclass(frozen=True)
class WindowBank:
    """Column m of ``h`` is the window h_m(n) localized at vertex m."""

    h: np.ndarray
    kind: str


@dataclass(frozen=True)
class VertexFrequencyMap:
    values: np.ndarray
    axis: str
    labels: np.ndarray | None = field(default=None)


def build_window_bank(spec, b: SpectralBasis | None = None, g: Graph | None = None,
                      normalize: str | None = None) -> WindowBank:
    """Windows from a spectral kernel C exp(-lambda tau) or from hop-distance samples.

    ``normalize`` rescales rows so that sum_m h_m(n) = 1 (``"sum"``) or
    sum_m h_m(n)^2 = 1 (``"energy"``).
    """
    if isinstance(spec, SpectralExponential):
        if b is None:
            raise ValueError("spectral windows need a spectral basis")
        u = b.eigenvectors
        h = (u * (spec.amplitude * np.exp(-b.eigenvalues * spec.tau))) @ u.T
        h = 0.5 * (h + h.T)
        kind = "spectral"
    elif isinstance(spec, VertexNeighborhood):
        if g is None:
            raise ValueError("vertex windows need the graph")
        gs = spec.samples
        h = gs[0] * np.eye(g.n)
        if spec.width >= 2:
            hops = shortest_hops(g)
            diameter = int(hops.max())
            if spec.width - 1 > diameter:
                warnings.warn(f"window width D={spec.width} exceeds graph diameter {diameter}",
                              RuntimeWarning, stacklevel=2)
            reach = reach_matrices(g, spec.width)
            for d in range(1, spec.width):
                h = h + gs[d] * reach[d]
        kind = "vertex"
    else:
        raise TypeError(f"unsupported window spec {type(spec).__name__}")
    if normalize is not None:
        if normalize == "sum":
            s = h.sum(axis=1)
        elif normalize == "energy":
            s = np.sqrt((h ** 2).sum(axis=1))
        else:
            raise ValueError(f"unknown window normalization {normalize!r}")
        if np.any(np.abs(s) <= 1e-300):
            raise ZeroDivisionError("a vertex receives zero total window weight")
        h = h / s[:, None]
    return WindowBank(h, kind)


def lgft_windowed(x, w: WindowBank, b: SpectralBasis) -> VertexFrequencyMap:
    """S(m, k) = sum_n x(n) h_m(n) u_k(n)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (b.n,) or w.h.shape != (b.n, b.n):
        raise ValueError("signal, window bank and basis sizes do not agree")
    return VertexFrequencyMap(w.h.T @ (x[:, None] * b.eigenvectors), "spectral_index", b.eigenvalues)


def _band_lambda_max(bands: BandFilterSet) -> float:
    if bands.breakpoints is not None:
        return float(bands.breakpoints[-1])
    return float(np.max(bands.lambdas))


def lgft_bands(x, bands: BandFilterSet, b: SpectralBasis | None = None, method: str = "exact",
               order: int | None = None, L=None, lambda_max: float | None = None) -> VertexFrequencyMap:
    """Column k = H_k(L) x.

    ``method="chebyshev"`` fits each band with an order-``order`` series on
    [0, lambda_max] and applies it to ``L`` by recursion; no eigenvectors are used.
    """
    x = np.asarray(x, dtype=float)
    if method == "exact":
        if b is None:
            raise ValueError("exact method needs the spectral basis")
        if bands.values.shape[1] != b.n or x.shape != (b.n,):
            raise ValueError("bands must be sampled on this basis's eigenvalues")
        u = b.eigenvectors
        X = u.T @ x
        return VertexFrequencyMap(u @ (bands.values * X).T, "band_index")
    if method != "chebyshev":
        raise ValueError(f"unknown method {method!r}")
    if order is None or order < 1:
        raise ValueError("chebyshev method needs order >= 1")
    if L is None:
        raise ValueError("chebyshev method needs the operator matrix L")
    lmax = float(lambda_max) if lambda_max is not None else _band_lambda_max(bands)
    cols = [chebyshev_apply(chebyshev_fit(f, 0.0, lmax, order), L, x) for f in bands.functions]
    return VertexFrequencyMap(np.column_stack(cols), "band_index")


def band_taps(bands: BandFilterSet, order: int, lambda_max: float | None = None) -> np.ndarray:
    """Monomial coefficients in lambda (vertex-domain taps for L^i) per band, shape (K+1, order+1)."""
    lmax = float(lambda_max) if lambda_max is not None else _band_lambda_max(bands)
    return np.array([chebyshev_fit(f, 0.0, lmax, order).lambda_monomial() for f in bands.functions])


def sgwt(x, spec: SgwtSpec, b: SpectralBasis | None = None, method: str = "exact",
         order: int | None = None, L=None) -> VertexFrequencyMap:
    """Column 0 is the scale-function channel G(L)x; column i is H(s_i L)x."""
    if method == "exact":
        if b is None:
            raise ValueError("exact method needs the spectral basis")
        bank = sgwt_bank(spec, b.eigenvalues)
        m = lgft_bands(x, bank, b)
    else:
        bank = sgwt_bank(spec, np.array([0.0, spec.lambda_max]))
        m = lgft_bands(x, bank, None, method, order, L, spec.lambda_max)
    return VertexFrequencyMap(m.values, "scale", np.concatenate([[0.0], spec.scales]))


def _values(S) -> np.ndarray:
    return np.asarray(S.values if isinstance(S, VertexFrequencyMap) else S, dtype=float)


def _check(condition: str, deviation: float, check: bool) -> None:
    if check and deviation > CONDITION_TOL:
        raise InversionConditionError(condition, deviation)


def invert_lgft(S, mode: str, aux, b: SpectralBasis | None = None, check: bool = True,
                weighted: bool = False) -> np.ndarray:
    """Reconstruct x from a vertex-frequency map.

    mode ``sum`` (aux = WindowBank): x = U sum_m S(m, :), needs sum_m h_m(n) = 1.
    mode ``kernel`` (aux = WindowBank): x(n) = sum_m sum_k S(m,k) h_m(n) u_k(n),
    needs sum_m h_m(n)^2 = 1; (aux = BandFilterSet): x = sum_k H_k(L) s_k, needs
    sum_k H_k^2 = 1.
    mode ``bands`` (aux = BandFilterSet): x = sum_k s_k, needs sum_k H_k = 1.
    ``weighted=True`` divides by the measured window sums instead of requiring them.
    The condition is checked; ``check=False`` computes the formula regardless.
    """
    S = _values(S)
    if mode == "bands":
        if not isinstance(aux, BandFilterSet):
            raise TypeError("bands mode needs a BandFilterSet")
        _check("sum_k H_k = 1", float(np.max(np.abs(aux.values.sum(axis=0) - 1))), check)
        return S.sum(axis=1)
    if b is None:
        raise ValueError(f"{mode} mode needs the spectral basis")
    u = b.eigenvectors
    if mode == "sum":
        if not isinstance(aux, WindowBank):
            raise TypeError("sum mode needs a WindowBank")
        num = u @ S.sum(axis=0)
        den = aux.h.sum(axis=1)
        if weighted:
            return num / den
        _check("sum_m h_m(n) = 1", float(np.max(np.abs(den - 1))), check)
        return num
    if mode == "kernel":
        if isinstance(aux, WindowBank):
            num = np.sum(aux.h * (u @ S.T), axis=1)
            den = (aux.h ** 2).sum(axis=1)
            if weighted:
                return num / den
            _check("sum_m h_m(n)^2 = 1", float(np.max(np.abs(den - 1))), check)
            return num
        if isinstance(aux, BandFilterSet):
            _check("sum_k H_k^2 = 1", float(np.max(np.abs((aux.values ** 2).sum(axis=0) - 1))), check)
            return u @ np.sum(aux.values.T * (u.T @ S), axis=1)
        raise TypeError("kernel mode needs a WindowBank or a BandFilterSet")
    raise ValueError(f"unknown inversion mode {mode!r}")


def frame_bounds(bands: BandFilterSet) -> tuple[float, float]:
    """(min, max) over the sampled eigenvalues of sum_k H_k^2."""
    if bands.values.size == 0:
        raise ValueError("empty band set")
    g = (bands.values ** 2).sum(axis=0)
    return float(g.min()), float(g.max())


@dataclass(frozen=True)
class Spectrogram:
    power: np.ndarray
    vertex_marginal: np.ndarray
    spectral_marginal: np.ndarray
    total: float


def spectrogram(S) -> Spectrogram:
    p = np.abs(_values(S)) ** 2
    return Spectrogram(p, p.sum(axis=1), p.sum(axis=0), float(p.sum()))


def concentration(S) -> float:
    """||S||_1 / ||S||_F."""
    v = np.abs(_values(S))
    fro = np.sqrt(np.sum(v ** 2))
    if fro == 0:
        raise ValueError("concentration of an all-zero map is undefined")
    return float(v.sum() / fro)


@dataclass(frozen=True)
class TauSearch:
    tau: float
    S: np.ndarray
    measure: float
    trace: tuple[tuple[float, float], ...]
    used_grid: bool


def optimize_tau(x, b: SpectralBasis, amplitude: float = 1.0, alpha_step: float = 5.0,
                 tau0: float = 1.0, tau1: float = 2.0, max_iter: int = 50, tol: float = 1e-3,
                 tau_floor: float = 1e-3) -> TauSearch:
    """Secant-like search tau_k = tau_{k-1} - alpha (M_{k-1} - M_{k-2}) on the spectral window width.

    If the iteration does not settle, 32 log-spaced tau in [1e-2, 1e2] are
    scanned. The tau with the smallest measure seen is returned.
    """
    if tau0 == tau1:
        raise ValueError("tau0 and tau1 must differ")
    x = np.asarray(x, dtype=float)

    def measure(tau):
        w = build_window_bank(SpectralExponential(tau, amplitude), b)
        return concentration(lgft_windowed(x, w, b))

    trace = [(tau0, measure(tau0)), (tau1, measure(tau1))]
    converged = False
    for _ in range(max_iter):
        (_, m2), (t1, m1) = trace[-2], trace[-1]
        t = max(t1 - alpha_step * (m1 - m2), tau_floor)
        trace.append((t, measure(t)))
        if abs(t - t1) < tol:
            converged = True
            break
    used_grid = not converged
    if used_grid:
        trace.extend((float(t), measure(t)) for t in np.logspace(-2, 2, 32))
    best_tau, best_m = min(trace, key=lambda p: (p[1], p[0]))
    S = lgft_windowed(x, build_window_bank(SpectralExponential(best_tau, amplitude), b), b).values
    return TauSearch(float(best_tau), S, float(best_m), tuple(trace), used_grid)


def vertex_varying_filter(S, threshold: float, mode: str, aux, b: SpectralBasis | None = None,
                          check: bool = True) -> np.ndarray:
    """Zero entries with |S| < threshold, then invert."""
    S = _values(S)
    return invert_lgft(np.where(np.abs(S) >= threshold, S, 0.0), mode, aux, b, check)


def energy_distribution(x, b: SpectralBasis) -> np.ndarray:
    """E(n, k) = x(n) X(k) u_k(n)."""
    x = np.asarray(x, dtype=float)
    u = b.eigenvectors
    return x[:, None] * u * (u.T @ x)[None, :]


def local_smoothness(x, L) -> np.ndarray:
    """(Lx)(n) / x(n); NaN where |x(n)| <= 1e-12."""
    x = np.asarray(x, dtype=float)
    lx = np.asarray(np.asarray(L, dtype=float) @ x)
    out = np.full(x.shape, np.nan)
    ok = np.abs(x) > SMOOTHNESS_FLOOR
    out[ok] = lx[ok] / x[ok]
    return out


def estimate_via_distribution(E) -> np.ndarray:
    """k(n) = argmax_k E(n, k), lowest index on ties."""
    return np.argmax(np.asarray(E, dtype=float), axis=1)


def distribution_center(E, lambdas) -> np.ndarray:
    """sum_k lambda_k E(n,k) / sum_k E(n,k); NaN where the row sum vanishes."""
    E = np.asarray(E, dtype=float)
    den = E.sum(axis=1)
    out = np.full(den.shape, np.nan)
    ok = np.abs(den) > SMOOTHNESS_FLOOR ** 2
    out[ok] = (E[ok] @ np.asarray(lambdas, dtype=float)) / den[ok]
    return out


def ideal_distribution(x, L, lambdas) -> np.ndarray:
    """x(n)^2 placed at the eigenvalue index closest to the local smoothness lambda(n)."""
    x = np.asarray(x, dtype=float)
    lam = np.asarray(lambdas, dtype=float)
    ls = local_smoothness(x, L)
    out = np.zeros((x.size, lam.size))
    ok = np.isfinite(ls)
    k = np.argmin(np.abs(ls[ok, None] - lam[None, :]), axis=1)
    out[np.flatnonzero(ok), k] = x[ok] ** 2
    return out


def sinc_kernel(n: int) -> np.ndarray:
    """phi(p, k, q) uniform over the valid k with |k - p| <= |p - q|.

    The count is taken after clipping to [0, N), so sum_k phi = 1 at the
    spectrum edges as well; phi(p, k, p) = delta(p - k).
    """
    p = np.arange(n)
    dist = np.abs(p[:, None] - p[None, :])
    mask = dist[:, :, None] <= dist[:, None, :]
    return mask / mask.sum(axis=1, keepdims=True)


def check_kernel(phi) -> None:
    phi = np.asarray(phi, dtype=float)
    n = phi.shape[0]
    if phi.shape != (n, n, n):
        raise ValueError("kernel must have shape (N, N, N)")
    if np.max(np.abs(phi.sum(axis=1) - 1)) > KERNEL_TOL:
        raise ValueError("kernel violates the vertex-marginal condition sum_k phi(p,k,q) = 1")
    diag = phi[np.arange(n), :, np.arange(n)]
    if np.max(np.abs(diag - np.eye(n))) > KERNEL_TOL:
        raise ValueError("kernel violates the frequency-marginal condition phi(p,k,p) = delta(p-k)")


def rid(x, b: SpectralBasis, kernel=None) -> np.ndarray:
    """G(n,k) = sum_p sum_q X(p) X(q) u_p(n) u_q(n) phi(p,k,q); sinc kernel by default."""
    x = np.asarray(x, dtype=float)
    phi = sinc_kernel(b.n) if kernel is None else np.asarray(kernel, dtype=float)
    check_kernel(phi)
    a = b.eigenvectors * (b.eigenvectors.T @ x)[None, :]
    t = np.tensordot(a, phi, axes=([1], [2]))
    return np.einsum("np,npk->nk", a, t)


def uncertainty_bound(b: SpectralBasis) -> float:
    """1 / max |u_k(m)|^2; complex bases (such as the DFT) are accepted."""
    return float(1.0 / np.max(np.abs(b.eigenvectors) ** 2))


def reassign_to_band_max(S) -> np.ndarray:
    """Per row, move sum |S| to the column of max |S| (lowest index on ties)."""
    v = np.abs(_values(S))
    out = np.zeros_like(v)
    out[np.arange(v.shape[0]), np.argmax(v, axis=1)] = v.sum(axis=1)
    return out


__all__ = [
    "InversionConditionError", "SpectralExponential", "VertexNeighborhood", "WindowBank",
    "VertexFrequencyMap", "Spectrogram", "TauSearch", "SUM_ONE", "SUM_SQUARES_ONE",
    "hann_vertex_window", "rectangular_vertex_window", "build_window_bank", "lgft_windowed",
    "lgft_bands", "band_taps", "sgwt", "invert_lgft", "frame_bounds", "spectrogram",
    "concentration", "optimize_tau", "vertex_varying_filter", "energy_distribution",
    "local_smoothness", "estimate_via_distribution", "distribution_center",
    "ideal_distribution", "sinc_kernel", "check_kernel", "rid", "uncertainty_bound",
    "reassign_to_band_max",
]
