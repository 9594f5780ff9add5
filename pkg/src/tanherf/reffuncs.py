"""Reference evaluations of erf and Dawson's function.

These are the oracles every approximation in the package is measured
against, so they share no code with the approximations.

erf is computed from the everywhere-positive series

    erf(x) = 2/sqrt(pi) * exp(-x**2) * sum_n x * (2 x**2)**n / (2n+1)!!

for |x| <= 3 and from the Laplace continued fraction for erfc beyond.
Dawson's function F(x) = exp(-x**2) * int_0^x exp(y**2) dy is summed as

    F(x) = exp(-x**2) * sum_n x**(2n+1) / (n! (2n+1))

for |x| <= small_x_cutoff and from its asymptotic series in 1/x**2
beyond.  Both series have no cancellation, so the absolute error is a few
ulp.  The identity F(x) = -i sqrt(pi)/2 exp(-x**2) erf(ix) is not used:
everything here stays in real arithmetic.

Two further routes, :func:`erf_quad` and :func:`dawson_ode`, evaluate the
defining integral and the initial value problem F' = 1 - 2xF directly and
exist only to cross-check the series.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError, UnsupportedOrderError

__all__ = [
    "OracleConfig",
    "DEFAULT_CONFIG",
    "MAX_DERIVATIVE_ORDER",
    "erf_ref",
    "dawson_ref",
    "dawson_derivative_ref",
    "dawson_derivatives",
    "erf_quad",
    "dawson_ode",
]

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_EPS = np.finfo(float).eps
_ERF_SERIES_LIMIT = 3.0
_MAX_TERMS = 5000

MAX_DERIVATIVE_ORDER = 30


@dataclass(frozen=True)
class OracleConfig:
    """Accuracy target and branch switch for the reference functions.

    Parameters
    ----------
    abs_tol : float
        Target absolute accuracy; must lie in (0, 1e-12].
    small_x_cutoff : float
        Dawson evaluation uses the Maclaurin series for |x| up to this
        value and the asymptotic series beyond.  The asymptotic series
        cannot reach 1e-14 below |x| ~ 5.5, hence the default of 6.
    """

    abs_tol: float = 1e-14
    small_x_cutoff: float = 6.0

    def __post_init__(self):
        if not (0.0 < self.abs_tol <= 1e-12):
            raise ValueError(f"abs_tol must lie in (0, 1e-12], got {self.abs_tol}")
        if not self.small_x_cutoff > 0.0:
            raise ValueError(f"small_x_cutoff must be positive, got {self.small_x_cutoff}")


DEFAULT_CONFIG = OracleConfig()


def _check_finite(x):
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")


def _erf_series(x):
    # positive-term series, |x| <= 3
    x2 = 2.0 * x * x
    term = x
    total = x
    n = 0
    while abs(term) > _EPS * abs(total) * 0.5:
        n += 1
        term *= x2 / (2 * n + 1)
        total += term
        if n > _MAX_TERMS:
            raise AccuracyError(f"erf series did not converge at x={x}")
    return _TWO_OVER_SQRT_PI * math.exp(-x * x) * total


def _erfc_cf(x):
    # modified Lentz on erfc(x) = exp(-x^2)/sqrt(pi) / (x + 1/2/(x + 1/(x + 3/2/(x + ...)))), x > 0
    tiny = 1e-300
    f = x
    c = f
    d = 0.0
    for n in range(1, _MAX_TERMS):
        a = 0.5 * n
        d = x + a * d
        d = 1.0 / (d if d != 0.0 else tiny)
        c = x + a / c
        if c == 0.0:
            c = tiny
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise AccuracyError(f"erfc continued fraction did not converge at x={x}")
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def _erf_scalar(x, config):
    _check_finite(x)
    ax = abs(x)
    if ax <= _ERF_SERIES_LIMIT:
        return _erf_series(x)
    if ax > 27.0:
        # erfc underflows
        return math.copysign(1.0, x)
    return math.copysign(1.0 - _erfc_cf(ax), x)


def _dawson_series(x):
    x2 = x * x
    u = x
    total = x
    n = 0
    while True:
        n += 1
        u *= x2 / n
        term = u / (2 * n + 1)
        total += term
        if abs(term) <= _EPS * abs(total) * 0.5:
            break
        if n > _MAX_TERMS:
            raise AccuracyError(f"Dawson series did not converge at x={x}")
    return math.exp(-x2) * total


def _dawson_asymptotic(x, abs_tol):
    # F(x) ~ 1/(2x) * sum_n (2n-1)!! / (2x^2)^n ; stop at the smallest term
    inv = 1.0 / (2.0 * x * x)
    term = 1.0
    total = 1.0
    n = 0
    while True:
        n += 1
        nxt = term * (2 * n - 1) * inv
        if abs(nxt) >= abs(term):
            # divergent from here on; remaining error is of the order of the last term
            if abs(term) / (2.0 * abs(x)) > abs_tol:
                raise AccuracyError(
                    f"asymptotic Dawson series cannot reach abs_tol={abs_tol} at x={x}; "
                    "raise small_x_cutoff"
                )
            break
        term = nxt
        total += term
        if abs(term) <= _EPS * abs(total) * 0.5:
            break
    return total / (2.0 * x)


def _dawson_scalar(x, config):
    _check_finite(x)
    if abs(x) <= config.small_x_cutoff:
        return _dawson_series(x)
    return _dawson_asymptotic(x, config.abs_tol)


def _apply(fn, x, config):
    if np.ndim(x) == 0:
        return fn(float(x), config)
    arr = np.asarray(x, dtype=float)
    out = np.empty_like(arr)
    flat_in = arr.ravel()
    flat_out = out.ravel()
    for i, xi in enumerate(flat_in):
        flat_out[i] = fn(float(xi), config)
    return out


def erf_ref(x, config: OracleConfig = DEFAULT_CONFIG):
    """Error function, accurate to ``config.abs_tol`` absolute.

    Accepts a scalar or an array; raises :class:`DomainError` on
    non-finite input.
    """
    return _apply(_erf_scalar, x, config)


def dawson_ref(x, config: OracleConfig = DEFAULT_CONFIG):
    """Dawson's function F(x) = exp(-x**2) * int_0^x exp(y**2) dy."""
    return _apply(_dawson_scalar, x, config)


def dawson_derivatives(x: float, k: int, config: OracleConfig = DEFAULT_CONFIG) -> list[float]:
    """Return ``[F(x), F'(x), ..., F^(k)(x)]``.

    The stack is seeded with F and F' = 1 - 2xF and advanced with
    F^(j+1) = -2x F^(j) - 2j F^(j-1).
    """
    if k < 0 or int(k) != k:
        raise ValueError(f"derivative order must be a nonnegative integer, got {k!r}")
    if k > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(
            f"derivative order {k} exceeds the depth limit {MAX_DERIVATIVE_ORDER}"
        )
    x = float(x)
    f0 = _dawson_scalar(x, config)
    stack = [f0, 1.0 - 2.0 * x * f0]
    for j in range(1, k):
        stack.append(-2.0 * x * stack[j] - 2.0 * j * stack[j - 1])
    return stack[: k + 1]


def dawson_derivative_ref(x: float, k: int, config: OracleConfig = DEFAULT_CONFIG) -> float:
    """k-th derivative of Dawson's function, ``k <= 30``."""
    return dawson_derivatives(x, k, config)[k]


def erf_quad(x: float, epsabs: float = 1e-15) -> float:
    """erf by adaptive Gauss-Kronrod quadrature of its defining integral."""
    _check_finite(x)
    with warnings.catch_warnings():
        # QUADPACK flags roundoff once it is at the double-precision floor
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(lambda t: math.exp(-t * t), 0.0, x, epsabs=epsabs, epsrel=1e-15, limit=200)
    if err > 1e-12:
        raise AccuracyError(f"quadrature error estimate {err} too large at x={x}")
    return _TWO_OVER_SQRT_PI * val


def dawson_ode(xs, rtol: float = 1e-14, atol: float = 1e-16, max_step: float = 0.02) -> np.ndarray:
    """Dawson's function at ``xs`` by integrating F' = 1 - 2xF from F(0) = 0.

    Uses an 8th-order Dormand-Prince integrator; negative abscissae are
    handled by a separate integration toward -inf, not by symmetry.  The
    step cap keeps the dense-output interpolant at the 1e-15 level.
    """
    xs = np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise DomainError("abscissae must be finite")
    out = np.zeros_like(xs)
    flat = xs.ravel()
    res = out.ravel()
    for sign in (1.0, -1.0):
        mask = (flat * sign) > 0
        if not mask.any():
            continue
        pts = flat[mask]
        order = np.argsort(sign * pts)
        t_eval = pts[order]
        sol = integrate.solve_ivp(
            lambda t, y: 1.0 - 2.0 * t * y,
            (0.0, t_eval[-1]),
            [0.0],
            method="DOP853",
            rtol=max(rtol, 2.3e-14),
            atol=atol,
            max_step=max_step,
            t_eval=t_eval,
        )
        if not sol.success:
            raise AccuracyError(f"ODE integration failed: {sol.message}")
        vals = np.empty_like(pts)
        vals[order] = sol.y[0]
        res[mask] = vals
    return out
