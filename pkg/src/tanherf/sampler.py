"""Inverse-CDF Gaussian generator built on the tanh series.

With CDF(x) = (1 + erf_lam(x)) / 2, a uniform u in (0, 1) maps to
x = CDF^-1(u).  The inversion is done in t = tanh(alpha x), where the
forward map P(t) = erf_lam(atanh(t) / alpha) is a polynomial on [-1, 1] with
derivative P'(t) = P(lam) (1 - t**2)**(lam - 1) >= 0, then mapped back with
x = atanh(t) / alpha.  An exact generator would produce N(0, 1/2).

Iteration stops once |P(t) - y| <= tol, i.e. half the CDF tolerance, which
leaves room for the rounding of the atanh/tanh round trip; in the tails the
residual is also held small relative to the tail mass.
The uniform source is numpy's Philox counter-based bit generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import curve_fit

from .errors import AccuracyError, DomainError
from .tanhseries import BASSETT_ALPHA, TanhSeries, build_series, prefactor

__all__ = [
    "PRESETS",
    "preset_series",
    "SamplerStream",
    "make_stream",
    "invert_cdf",
    "sample",
    "sample_n",
    "HistogramFit",
    "fit_histogram",
    "fit_counts",
    "histogram_rows",
]

_T_MAX = float(np.nextafter(1.0, 0.0))
_EPS = float(np.finfo(float).eps)

# the three generators of the width comparison: (order, alpha)
PRESETS = {
    "bassett": (1, BASSETT_ALPHA),
    "opt1": (1, 1.203315),
    "opt2": (2, 0.7865),
}


def preset_series(name: str) -> TanhSeries:
    try:
        lam, alpha = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build_series(lam, alpha)


def _forward_t(sech_coeffs, t):
    # P(t) = t * sum_n d_n (1 - t^2)^n; positive terms only
    s2 = (1.0 - t) * (1.0 + t)
    acc = np.full_like(t, sech_coeffs[-1])
    for dn in sech_coeffs[-2::-1]:
        acc = acc * s2 + dn
    return t * acc


def _solve_t(series: TanhSeries, y: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    # solve P(t) = y for y in [0, 1), t in [0, 1); Newton with bisection safeguard
    coeffs = series.sech_coeffs
    p = float(prefactor(series.lam))
    lo = np.zeros_like(y)
    hi = np.full_like(y, _T_MAX)
    t = y.copy()
    # relative accuracy in the tails, where 1 - y is the tail mass
    thresh = np.minimum(tol, np.maximum(1e-6 * (1.0 - y), 4.0 * _EPS))
    active = np.ones(y.shape, dtype=bool)
    for _ in range(max_iter):
        r = _forward_t(coeffs, t) - y
        done = (np.abs(r) <= thresh) | (hi - lo <= 4.0 * _EPS * hi)
        active &= ~done
        if not active.any():
            return t
        lo = np.where(active & (r < 0), t, lo)
        hi = np.where(active & (r > 0), t, hi)
        dp = p * (1.0 - t * t) ** (series.lam - 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = t - r / dp
        bad = ~np.isfinite(step) | (step <= lo) | (step >= hi)
        step = np.where(bad, 0.5 * (lo + hi), step)
        t = np.where(active, step, t)
    r = _forward_t(coeffs, t) - y
    if np.any(np.abs(r) > tol):
        raise AccuracyError(f"CDF inversion did not converge in {max_iter} iterations")
    return t


def invert_cdf(series: TanhSeries, u, tol: float = 1e-12, max_iter: int = 64):
    """Return x with |(1 + erf_lam(x)) / 2 - u| <= tol.

    ``u`` may be a scalar or an array of values in the open interval
    (0, 1).  Order 1 is inverted in closed form.
    """
    ua = np.asarray(u, dtype=float)
    if not np.all((ua > 0.0) & (ua < 1.0)):
        raise DomainError("u must lie in the open interval (0, 1)")
    # 2u - 1 rounds to +-1 for u within 2**-54 of the ends; the CDF there is below tol anyway
    y = np.clip(2.0 * ua - 1.0, -_T_MAX, _T_MAX)
    if series.lam == 1:
        x = np.arctanh(y) / series.alpha
    else:
        s = np.sign(y)
        t = _solve_t(series, np.abs(y), tol, max_iter)
        x = s * np.arctanh(t) / series.alpha
    if x.ndim == 0:
        return float(x)
    return x


@dataclass
class SamplerStream:
    """Mutable generator state; one owner at a time."""

    series: TanhSeries
    rng: np.random.Generator
    inversion_tol: float = 1e-12
    max_newton_iters: int = 64
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.inversion_tol > 0:
            raise ValueError("inversion_tol must be positive")
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be positive")


def make_stream(series: TanhSeries, seed: int | None = None, **kwargs) -> SamplerStream:
    return SamplerStream(series, np.random.Generator(np.random.Philox(seed)), seed=seed, **kwargs)


def _uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.random(n)
    # random() is [0, 1); redraw the (rare) exact zeros
    zero = u == 0.0
    while zero.any():
        u[zero] = rng.random(int(zero.sum()))
        zero = u == 0.0
    return u


def sample(stream: SamplerStream) -> float:
    """Draw one variate."""
    u = _uniforms(stream.rng, 1)
    return float(invert_cdf(stream.series, u, stream.inversion_tol, stream.max_newton_iters)[0])


def sample_n(stream: SamplerStream, n: int) -> np.ndarray:
    """Draw ``n`` variates; same values as ``n`` calls to :func:`sample`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    u = _uniforms(stream.rng, n)
    return invert_cdf(stream.series, u, stream.inversion_tol, stream.max_newton_iters)


@dataclass(frozen=True)
class HistogramFit:
    mean: float
    sigma: float
    amplitude: float
    n_samples: int
    bin_width: float
    chi2_per_dof: float


def _gauss(x, amp, mu, sigma):
    return amp * np.exp(-0.5 * ((x - mu) / sigma) ** 2)


def fit_histogram(samples, bins: int = 200, range=(-4.0, 4.0)) -> HistogramFit:
    """Fit a Gaussian to the histogram of ``samples``.

    Bin counts are fitted by least squares with Poisson errors
    sqrt(count); empty bins carry no weight and are dropped.  For the
    heavy-tailed tanh generators the result is the width of the core,
    not the sample standard deviation.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < 10_000:
        raise ValueError(f"need at least 10^4 samples, got {x.size}")
    if bins < 10:
        raise ValueError("need at least 10 bins")
    if not np.all(np.isfinite(x)) or np.ptp(x) == 0.0:
        raise ValueError("samples are degenerate or non-finite")
    counts, edges = np.histogram(x, bins=bins, range=range)
    return fit_counts(counts, edges, p0=(float(np.mean(x)), float(np.std(x))), n_samples=x.size)


def fit_counts(counts, edges, p0=None, n_samples: int | None = None) -> HistogramFit:
    """Poisson-weighted Gaussian fit to precomputed bin counts.

    Lets callers accumulate a histogram in chunks when the raw samples do
    not fit in memory.  ``p0`` is an optional (mean, sigma) start;
    ``n_samples`` defaults to the binned total.
    """
    counts = np.asarray(counts)
    edges = np.asarray(edges, dtype=float)
    if edges.size != counts.size + 1:
        raise ValueError("edges must have one more entry than counts")
    centers = 0.5 * (edges[1:] + edges[:-1])
    used = counts > 0
    if used.sum() < 4:
        raise ValueError("fewer than four populated bins")
    c, h = centers[used], counts[used].astype(float)
    if p0 is None:
        mu0 = float(np.sum(c * h) / h.sum())
        p0 = (mu0, float(np.sqrt(np.sum(h * (c - mu0) ** 2) / h.sum())))
    try:
        popt, _ = curve_fit(_gauss, c, h, p0=[h.max(), *p0], sigma=np.sqrt(h),
                            absolute_sigma=True, maxfev=10_000)
    except RuntimeError as exc:
        raise AccuracyError(f"histogram fit failed: {exc}") from exc
    amp, mu, sigma = popt
    resid = (h - _gauss(c, *popt)) / np.sqrt(h)
    dof = max(h.size - 3, 1)
    return HistogramFit(
        mean=float(mu),
        sigma=float(abs(sigma)),
        amplitude=float(amp),
        n_samples=int(counts.sum() if n_samples is None else n_samples),
        bin_width=float(edges[1] - edges[0]),
        chi2_per_dof=float(np.sum(resid**2) / dof),
    )


def histogram_rows(samples, bins: int = 200, range=(-4.0, 4.0)) -> list[dict]:
    counts, edges = np.histogram(np.asarray(samples, dtype=float), bins=bins, range=range)
    centers = 0.5 * (edges[1:] + edges[:-1])
    return [{"bin_center": float(c), "count": int(n)} for c, n in zip(centers, counts)]
