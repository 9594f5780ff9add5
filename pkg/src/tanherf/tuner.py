"""Minimax tuning of the tanh-series scale parameter alpha."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._golden import golden_min
from .errors import BracketError
from .reffuncs import erf_ref
from .tanhseries import build_series, default_grid, error_peaks, eval_series

__all__ = [
    "TABLE1",
    "DEFAULT_BRACKET",
    "TuneReport",
    "worst_error",
    "tune_alpha",
    "tune_table",
    "alpha_trend_fit",
]

# published optimal alpha per order
TABLE1 = {
    1: 1.203315,
    2: 0.778004,
    3: 0.615589,
    4: 0.524697,
    5: 0.464819,
    7: 0.388543,
    10: 0.3224,
    15: 0.261549,
    20: 0.225779,
    30: 0.183755,
}

DEFAULT_BRACKET = (0.05, 2.0)


@dataclass
class TuneReport:
    """Outcome of :func:`tune_alpha`.

    ``balance`` is the relative gap between the two largest error peaks,
    ``(e1 - e2) / e1``; minimax optimality drives it toward zero.
    """

    lam: int
    alpha_opt: float
    max_err: float
    peak_locations: list[float]
    iterations: int
    balance: float
    bracket: tuple[float, float]
    error_curve: list[tuple[float, float]] = field(default_factory=list, repr=False)

    def row(self) -> dict:
        return {"lambda": self.lam, "alpha_opt": self.alpha_opt, "max_err": self.max_err}

    def curve_rows(self) -> list[dict]:
        return [{"x": x, "err": e} for x, e in self.error_curve]


def worst_error(lam: int, alpha: float, grid=None) -> float:
    """g(alpha) = max_x |erf(x) - erf_lam(x)| on the grid, peak-refined."""
    return error_peaks(build_series(lam, alpha), grid, n_peaks=3)[0][1]


def tune_alpha(lam: int, bracket=DEFAULT_BRACKET, tol: float = 1e-6, grid=None) -> TuneReport:
    """Find the alpha minimizing the worst-case deviation from erf.

    Golden-section search on ``bracket``; each objective evaluation scans
    ``grid`` and refines the leading error peaks.

    Raises
    ------
    BracketError
        If the minimum sits on the bracket boundary.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0.0 < lo < hi):
        raise BracketError(f"bracket must satisfy 0 < lo < hi, got {bracket!r}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    g = default_grid() if grid is None else np.asarray(grid, dtype=float)

    alpha, _, iterations = golden_min(lambda a: worst_error(lam, a, g), lo, hi, tol)
    if alpha - lo <= 2 * tol or hi - alpha <= 2 * tol:
        raise BracketError(
            f"no interior minimum in [{lo}, {hi}] for order {lam}: search ended at alpha={alpha}"
        )

    series = build_series(lam, alpha)
    peaks = error_peaks(series, g, n_peaks=3)
    e1 = peaks[0][1]
    e2 = peaks[1][1] if len(peaks) > 1 else 0.0
    curve = erf_ref(g) - eval_series(series, g)
    return TuneReport(
        lam=lam,
        alpha_opt=alpha,
        max_err=e1,
        peak_locations=[p[0] for p in peaks[:2]],
        iterations=iterations,
        balance=(e1 - e2) / e1 if e1 > 0 else 0.0,
        bracket=(lo, hi),
        error_curve=list(zip(g.tolist(), curve.tolist())),
    )


def tune_table(orders=tuple(TABLE1), **kwargs) -> list[TuneReport]:
    """Tune every order in ``orders``."""
    return [tune_alpha(lam, **kwargs) for lam in orders]


def _pairs(reports):
    out = []
    for r in reports:
        if isinstance(r, TuneReport):
            out.append((float(r.lam), float(r.alpha_opt)))
        else:
            lam, alpha = r
            out.append((float(lam), float(alpha)))
    return out


def alpha_trend_fit(reports) -> tuple[float, float]:
    """Fit alpha = A * lam**p by least squares in log-log space.

    ``reports`` holds :class:`TuneReport` objects or ``(lam, alpha)``
    pairs.  Returns ``(A, p)``.
    """
    pairs = _pairs(reports)
    lams = np.array([p[0] for p in pairs])
    if len(np.unique(lams)) < 3:
        raise ValueError("trend fit needs at least 3 distinct orders")
    alphas = np.array([p[1] for p in pairs])
    design = np.column_stack([np.ones_like(lams), np.log(lams)])
    (log_a, p), *_ = np.linalg.lstsq(design, np.log(alphas), rcond=None)
    return math.exp(log_a), float(p)
