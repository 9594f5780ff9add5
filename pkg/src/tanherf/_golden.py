"""Golden-section search used by the error-peak refiner and the alpha tuner."""

from __future__ import annotations

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(f, lo: float, hi: float, tol: float, max_iter: int = 200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x), iterations)`` where ``x`` is the best point
    evaluated.  Ties go to the smaller abscissa so results are
    deterministic.
    """
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    best = min((fc, c), (fd, d))
    it = 0
    while (b - a) > tol and it < max_iter:
        it += 1
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
            cand = (fc, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
            cand = (fd, d)
        best = min(best, cand)
    fx, x = best
    return x, fx, it


def golden_max(f, lo: float, hi: float, tol: float, max_iter: int = 200):
    x, fx, it = golden_min(lambda t: -f(t), lo, hi, tol, max_iter)
    return x, -fx, it
