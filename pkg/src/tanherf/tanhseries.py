"""Finite hyperbolic-tangent series approximating erf.

The order-``lam`` approximant integrates a normalized sech**(2 lam) bell,

    erf_lam(x) = P(lam) * alpha * int_0^x sech(alpha y)**(2 lam) dy,
    P(lam)     = 2 Gamma(lam + 1/2) / (sqrt(pi) Gamma(lam)),

which for integer ``lam`` has the closed form

    erf_lam(x) = sum_{k<lam} c_k tanh(alpha x)**(2k+1),
    c_k        = P(lam) * C(lam-1, k) * (-1)**k / (2k+1).

P(lam) is rational (the sqrt(pi) cancels), so the c_k are built exactly
with :class:`fractions.Fraction` and converted to float once.  They sum to
exactly one, which is what makes erf_lam(+-inf) = +-1.

The c_k alternate in sign and grow like 2**lam, so summing them in floating
point cancels badly once tanh(alpha x) nears one (about 1e-8 absolute at
lam = 30).  Evaluation therefore uses the same polynomial in the basis of
powers of s = sech(alpha x)**2 = 1 - t**2,

    erf_lam(x) = t * sum_{n<lam} d_n s**n,   d_0 = 1,  d_n = P(n) / (2n),

which follows from integrating sech**(2 lam) by parts.  All d_n are
positive, so there is no cancellation, and t and s both come from a single
exponential.

Near saturation t * sum(...) is a product of a number just below one and a
number just above one, which jitters by an ulp.  There the complement

    1 - erf_lam(x) = (P/2) sum_{m>=0} C(2m, m) 4**-m s**(lam+m) / (lam+m)

(positive terms, monotone in s) is summed instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from ._golden import golden_max
from .errors import AccuracyError, DomainError, UnsupportedOrderError
from .reffuncs import erf_ref

__all__ = [
    "MAX_ORDER",
    "BASSETT_ALPHA",
    "TanhSeries",
    "prefactor",
    "build_series",
    "sech_basis",
    "tanh_sech2",
    "eval_series",
    "eval_power_basis",
    "eval_integral_form",
    "default_grid",
    "error_peaks",
    "max_abs_error",
    "series_rows",
]

MAX_ORDER = 64
BASSETT_ALPHA = 2.0 / math.sqrt(math.pi)


def _check_order(lam):
    if int(lam) != lam or lam < 1:
        raise UnsupportedOrderError(f"series order must be a positive integer, got {lam!r}")
    if lam > MAX_ORDER:
        raise UnsupportedOrderError(f"series order {lam} exceeds the cap {MAX_ORDER}")


@lru_cache(maxsize=None)
def prefactor(lam: int) -> Fraction:
    """Exact value of 2 Gamma(lam + 1/2) / (sqrt(pi) Gamma(lam)).

    Uses P(1) = 1 and P(lam + 1) = P(lam) * (2 lam + 1) / (2 lam).
    """
    _check_order(lam)
    value = Fraction(1)
    for j in range(1, lam):
        value *= Fraction(2 * j + 1, 2 * j)
    return value


@lru_cache(maxsize=None)
def sech_basis(lam: int) -> tuple[Fraction, ...]:
    """Exact coefficients d_n of erf_lam / t in powers of sech**2."""
    _check_order(lam)
    return (Fraction(1),) + tuple(prefactor(n) / (2 * n) for n in range(1, lam))


# the complement branch starts where 1 - erf_lam falls to about this level
_TAIL_START = 1e-10


@lru_cache(maxsize=None)
def _tail_basis(lam: int) -> tuple[tuple[float, ...], float]:
    """Complement coefficients and the sech**2 threshold of the tail branch.

    Below the threshold the complement is under ~1e-10 and the truncated
    series is accurate to 2**-56 absolute.
    """
    half_p = float(prefactor(lam)) / 2.0
    # C(2m, m) / 4**m by its ratio recurrence
    b = [1.0]
    for m in range(399):
        b.append(b[-1] * (2 * m + 1) / (2 * m + 2))
    terms = [half_p * bm / (lam + m) for m, bm in enumerate(b)]

    def comp(s):
        acc = 0.0
        for q in reversed(terms):
            acc = acc * s + q
        return acc * s**lam

    lo, hi = 0.0, 0.95
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if comp(mid) < _TAIL_START else (lo, mid)
    s_tail = lo
    # truncation after M terms is below half_p s**(lam+M) / ((lam+M)(1-s))
    n_terms = 1
    while half_p * s_tail ** (lam + n_terms) / ((lam + n_terms) * (1.0 - s_tail)) > 2.0**-56:
        n_terms += 1
    return tuple(terms[:n_terms]), s_tail


@dataclass(frozen=True)
class TanhSeries:
    """Order-``lam`` tanh series with argument scale ``alpha``.

    ``coeffs`` holds the exact multipliers of tanh**(2k+1)(alpha x),
    prefactor included.  Instances are callable.
    """

    lam: int
    alpha: float
    coeffs: tuple[Fraction, ...]
    float_coeffs: tuple[float, ...] = field(init=False, repr=False, compare=False)
    sech_coeffs: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_order(self.lam)
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if len(self.coeffs) != self.lam:
            raise ValueError(f"expected {self.lam} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "float_coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "sech_coeffs", tuple(float(d) for d in sech_basis(self.lam)))

    def __call__(self, x):
        return eval_series(self, x)

    @property
    def slope_at_origin(self) -> float:
        return self.alpha * float(prefactor(self.lam))


def build_series(lam: int, alpha: float) -> TanhSeries:
    """Construct the order-``lam`` series; ``1 <= lam <= 64``."""
    _check_order(lam)
    p = prefactor(lam)
    coeffs = tuple(
        p * math.comb(lam - 1, k) * (-1) ** k / (2 * k + 1) for k in range(lam)
    )
    if sum(coeffs) != 1:
        raise AccuracyError(f"coefficients of order {lam} do not sum to one")
    return TanhSeries(lam, float(alpha), coeffs)


def tanh_sech2(u):
    """Return ``(tanh(u), sech(u)**2)`` from one exponential."""
    u = np.asarray(u, dtype=float)
    e = np.exp(-2.0 * np.abs(u))
    t = np.copysign((1.0 - e) / (1.0 + e), u)
    s2 = 4.0 * e / ((1.0 + e) * (1.0 + e))
    return t, s2


def eval_series(series: TanhSeries, x):
    """Evaluate the series at ``x`` (scalar or array).

    Horner's scheme in sech(alpha x)**2 over positive coefficients, or
    one minus the positive complement series once sech**2 is small.
    """
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("argument must be finite")
    u = series.alpha * xa
    t, s2 = tanh_sech2(u)
    d = series.sech_coeffs
    acc = np.full_like(t, d[-1])
    for dn in d[-2::-1]:
        acc = acc * s2 + dn
    out = t * acc
    q, s_tail = _tail_basis(series.lam)
    tail = s2 <= s_tail
    if np.any(tail):
        st = s2[tail] if out.ndim else s2
        comp = np.full_like(st, q[-1])
        for qm in q[-2::-1]:
            comp = comp * st + qm
        comp = comp * st**series.lam
        val = np.copysign(1.0 - comp, u[tail] if out.ndim else u)
        if out.ndim:
            out[tail] = val
        else:
            out = val
    if out.ndim == 0:
        return float(out)
    return out


def eval_power_basis(series: TanhSeries, x):
    """Evaluate through the alternating c_k by Horner's scheme in tanh**2.

    Mathematically identical to :func:`eval_series` but loses digits to
    cancellation for large orders; kept as a cross-check.
    """
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("argument must be finite")
    t = np.tanh(series.alpha * xa)
    t2 = t * t
    c = series.float_coeffs
    acc = np.full_like(t, c[-1])
    for ck in c[-2::-1]:
        acc = acc * t2 + ck
    out = t * acc
    if out.ndim == 0:
        return float(out)
    return out


def _sech_power(u, p):
    # sech(u) = 2 e^{-|u|} / (1 + e^{-2|u|}); never overflows
    e = math.exp(-abs(u))
    return (2.0 * e / (1.0 + e * e)) ** p


def eval_integral_form(lam: int, alpha: float, x: float, epsabs: float = 1e-13) -> float:
    """erf_lam(x) by adaptive quadrature of the sech**(2 lam) integral.

    Independent of the closed-form coefficients; used to check
    :func:`eval_series`.
    """
    _check_order(lam)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    if x == 0.0:
        return 0.0
    p = 2 * lam
    val, err = integrate.quad(
        lambda y: _sech_power(alpha * y, p), 0.0, x, epsabs=epsabs, epsrel=1e-13, limit=200
    )
    if err > 1e3 * epsabs:
        raise AccuracyError(f"quadrature error estimate {err:.3g} exceeds tolerance")
    return float(prefactor(lam)) * alpha * val


def default_grid(n: int = 4001, upper: float = 8.0) -> np.ndarray:
    """Uniform grid on ``[0, upper]``; oddness makes x < 0 redundant."""
    return np.linspace(0.0, upper, n)


@lru_cache(maxsize=16)
def _erf_on_grid(key: bytes) -> np.ndarray:
    grid = np.frombuffer(key, dtype=float)
    out = erf_ref(grid)
    out.setflags(write=False)
    return out


def _reference(grid: np.ndarray) -> np.ndarray:
    return _erf_on_grid(np.ascontiguousarray(grid, dtype=float).tobytes())


def _check_grid(grid):
    g = np.asarray(grid, dtype=float).ravel()
    if g.size == 0:
        raise ValueError("evaluation grid is empty")
    if not np.all(np.isfinite(g)):
        raise ValueError("evaluation grid has non-finite abscissae")
    return g


def error_peaks(series: TanhSeries, grid=None, n_peaks: int = 3, xtol: float = 1e-10):
    """Locate the largest local maxima of |erf - erf_lam|.

    Local maxima of the grid error are refined by golden-section search
    between the neighbouring grid points.  Returns up to ``n_peaks``
    ``(x, abs_err)`` pairs, largest first.
    """
    g = _check_grid(default_grid() if grid is None else grid)
    order = np.argsort(g, kind="stable")
    g = g[order]
    err = np.abs(_reference(g) - eval_series(series, g))
    m = g.size
    if m == 1:
        return [(float(g[0]), float(err[0]))]
    interior = np.flatnonzero((err[1:-1] >= err[:-2]) & (err[1:-1] > err[2:])) + 1
    cands = list(interior)
    if err[0] > err[1]:
        cands.append(0)
    if err[-1] > err[-2]:
        cands.append(m - 1)
    cands.sort(key=lambda i: (-err[i], i))
    cands = cands[:n_peaks]

    def abs_err(t):
        return abs(erf_ref(t) - eval_series(series, t))

    peaks = []
    for i in cands:
        lo = g[max(i - 1, 0)]
        hi = g[min(i + 1, m - 1)]
        x, e, _ = golden_max(abs_err, lo, hi, xtol)
        if e < err[i]:
            x, e = float(g[i]), float(err[i])
        peaks.append((float(x), float(e)))
    peaks.sort(key=lambda p: (-p[1], p[0]))
    return peaks


def max_abs_error(series: TanhSeries, grid=None) -> tuple[float, float]:
    """Return ``(x_star, e_star)``, the refined worst-case deviation from erf."""
    return error_peaks(series, grid, n_peaks=3)[0]


def series_rows(series: TanhSeries) -> list[dict]:
    """Coefficient table, one row per k, for CSV export."""
    return [
        {"lambda": series.lam, "alpha": series.alpha, "k": k, "c_k": float(c)}
        for k, c in enumerate(series.coeffs)
    ]
