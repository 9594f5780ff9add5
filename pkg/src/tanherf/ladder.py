"""Wrong-sign Hermite eigenfunctions and the Dawson derivative ladder.

The functions Ht_n(x) = exp(-x**2) H_n(x) solve

    Ht'' + 2x Ht' + 2(n+1) Ht = 0,

the Hermite equation with the sign of the first-derivative term flipped,
and are linked by

    (d/dx + 2x) Ht_n = 2n Ht_{n-1},      -d/dx Ht_n = Ht_{n+1}.

Dawson's function F solves the same n = 0 equation as Ht_0 = exp(-x**2)
with a different first derivative (F' = 1 - 2xF against Ht_0' = -2x Ht_0),
and its derivatives D_n = F^(n-1) obey the matching three-term recurrence.
D_0 is the constant function, normalized here to 1.

Polynomials are lists of Python ints, lowest degree first, so the ladder
identities are checked exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError, UnsupportedOrderError
from .reffuncs import DEFAULT_CONFIG, MAX_DERIVATIVE_ORDER, dawson_derivatives, dawson_ref

__all__ = [
    "MAX_HERMITE_ORDER",
    "MAX_DAWSON_ORDER",
    "HermitePoly",
    "LadderCheck",
    "hermite_poly",
    "poly_eval",
    "wrong_sign_eval",
    "ladder_down_identity",
    "ladder_up_identity",
    "dawson_eigen_eval",
    "dawson_quad",
    "second_solution_check",
    "shared_equation_residuals",
    "ladder_report",
]

MAX_HERMITE_ORDER = 40
MAX_DAWSON_ORDER = MAX_DERIVATIVE_ORDER + 1


# --- exact integer polynomial arithmetic -------------------------------


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _add(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _scale(p, c):
    return _trim([c * a for a in p])


def _shift(p):
    # multiply by x
    return _trim([0] + list(p))


def _deriv(p):
    return _trim([i * p[i] for i in range(1, len(p))] or [0])


def _is_zero(p):
    return all(a == 0 for a in p)


@dataclass(frozen=True)
class HermitePoly:
    """Physicists' Hermite polynomial H_n with exact integer coefficients."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return poly_eval(self.coeffs, x)


def _check_hermite_order(n, cap=MAX_HERMITE_ORDER):
    if int(n) != n or n < 0:
        raise ValueError(f"order must be a nonnegative integer, got {n!r}")
    if n > cap:
        raise UnsupportedOrderError(f"order {n} exceeds the cap {cap}")


@lru_cache(maxsize=None)
def _hermite_coeffs(n: int) -> tuple[int, ...]:
    prev, cur = [1], [0, 2]
    if n == 0:
        return tuple(prev)
    for k in range(1, n):
        prev, cur = cur, _add(_scale(_shift(cur), 2), _scale(prev, -2 * k))
    return tuple(cur)


def hermite_poly(n: int) -> HermitePoly:
    """H_n from H_{n+1} = 2x H_n - 2n H_{n-1}; ``n <= 40``."""
    _check_hermite_order(n)
    return HermitePoly(n, _hermite_coeffs(n))


def poly_eval(coeffs, x):
    """Horner evaluation of integer coefficients (lowest degree first)."""
    xa = np.asarray(x, dtype=float)
    acc = np.zeros_like(xa)
    for c in reversed(coeffs):
        acc = acc * xa + float(c)
    return float(acc) if acc.ndim == 0 else acc


def _hermite_values(n, x):
    # float three-term recurrence; stabler than Horner on the large coefficients
    h0 = np.ones_like(x)
    if n == 0:
        return h0
    h1 = 2.0 * x
    for k in range(1, n):
        h0, h1 = h1, 2.0 * x * h1 - 2.0 * k * h0
    return h1


def wrong_sign_eval(n: int, x):
    """Ht_n(x) = exp(-x**2) H_n(x)."""
    _check_hermite_order(n)
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("argument must be finite")
    out = np.exp(-xa * xa) * _hermite_values(n, xa)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class LadderCheck:
    """Outcome of an exact ladder identity check."""

    identity: str
    n: int
    residual: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return _is_zero(self.residual)

    @property
    def residual_norm(self) -> int:
        return max(abs(c) for c in self.residual)


def ladder_down_identity(n: int) -> LadderCheck:
    """Check (d/dx + 2x) Ht_n = 2n Ht_{n-1} on the polynomial factors.

    With Ht_n = exp(-x**2) H_n the left side is exp(-x**2) (H_n' - 2x H_n + 2x H_n),
    so the residual polynomial is H_n' - 2n H_{n-1}.
    """
    if n < 1:
        raise ValueError("lowering needs n >= 1")
    _check_hermite_order(n)
    hn = list(_hermite_coeffs(n))
    lhs = _add(_add(_deriv(hn), _scale(_shift(hn), -2)), _scale(_shift(hn), 2))
    rhs = _scale(list(_hermite_coeffs(n - 1)), 2 * n)
    return LadderCheck("down", n, tuple(_add(lhs, _scale(rhs, -1))))


def ladder_up_identity(n: int) -> LadderCheck:
    """Check -d/dx Ht_n = Ht_{n+1}: residual -(H_n' - 2x H_n) - H_{n+1}."""
    _check_hermite_order(n, MAX_HERMITE_ORDER - 1)
    hn = list(_hermite_coeffs(n))
    lhs = _scale(_add(_deriv(hn), _scale(_shift(hn), -2)), -1)
    rhs = list(_hermite_coeffs(n + 1))
    return LadderCheck("up", n, tuple(_add(lhs, _scale(rhs, -1))))


def dawson_eigen_eval(n: int, x: float, config=DEFAULT_CONFIG) -> float:
    """D_n(x): 1 for n = 0, else F^(n-1)(x); ``n <= 31``."""
    if int(n) != n or n < 0:
        raise ValueError(f"order must be a nonnegative integer, got {n!r}")
    if n > MAX_DAWSON_ORDER:
        raise UnsupportedOrderError(f"order {n} exceeds the cap {MAX_DAWSON_ORDER}")
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    if n == 0:
        return 1.0
    return dawson_derivatives(x, n - 1, config)[n - 1]


def dawson_quad(x: float) -> float:
    """Second solution built from Ht_0 by reduction of order, by quadrature.

    exp(-x**2) int_0^x exp(y**2) dy is integrated as int_0^x exp(-(x-y)(x+y)) dy
    so the integrand stays in [0, 1].
    """
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    if x == 0.0:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(
            lambda y: math.exp(-(x - y) * (x + y)), 0.0, x, epsabs=1e-15, epsrel=1e-14, limit=200
        )
    if err > 1e-11:
        raise AccuracyError(f"quadrature error estimate {err:.3g} at x={x}")
    return val


def second_solution_check(x_grid) -> float:
    """Max |dawson_quad(x) - dawson_ref(x)| over the grid."""
    xs = np.asarray(x_grid, dtype=float).ravel()
    if not np.all(np.isfinite(xs)):
        raise DomainError("grid must be finite")
    if xs.size == 0:
        return 0.0
    return max(abs(dawson_quad(float(x)) - dawson_ref(float(x))) for x in xs)


def shared_equation_residuals(x: float, n: int = 0) -> tuple[float, float]:
    """Residuals of the n-th wrong-sign equation for (Ht_n, F^(n)).

    Ht_n derivatives come from the raising relation, Ht_n' = -Ht_{n+1};
    F derivatives from the Dawson recurrence.  For n = 0 both solve the
    same equation.
    """
    h0 = wrong_sign_eval(n, x)
    h1 = -wrong_sign_eval(n + 1, x)
    h2 = wrong_sign_eval(n + 2, x)
    res_h = h2 + 2.0 * x * h1 + 2.0 * (n + 1) * h0
    f = dawson_derivatives(x, n + 2)
    res_f = f[n + 2] + 2.0 * x * f[n + 1] + 2.0 * (n + 1) * f[n]
    return float(res_h), float(res_f)


def ladder_report(max_n: int = 20) -> list[str]:
    """Plain-text PASS/FAIL lines for both identities, n = 0..max_n."""
    _check_hermite_order(max_n, MAX_HERMITE_ORDER - 1)
    lines = []
    for n in range(max_n + 1):
        up = ladder_up_identity(n)
        lines.append(f"up   n={n:2d} {'PASS' if up.passed else 'FAIL'} residual_norm={up.residual_norm}")
        if n >= 1:
            down = ladder_down_identity(n)
            lines.append(
                f"down n={n:2d} {'PASS' if down.passed else 'FAIL'} residual_norm={down.residual_norm}"
            )
    return lines
