import math

import numpy as np
import pytest
import sympy as sp

from tanherf.errors import DomainError, UnsupportedOrderError
from tanherf.ladder import (
    MAX_HERMITE_ORDER,
    dawson_eigen_eval,
    dawson_quad,
    hermite_poly,
    ladder_down_identity,
    ladder_report,
    ladder_up_identity,
    poly_eval,
    second_solution_check,
    shared_equation_residuals,
    wrong_sign_eval,
)
from tanherf.reffuncs import dawson_derivative_ref, dawson_derivatives

# (-1)^n e^{x^2} d^n/dx^n e^{-x^2} for n = 6, low to high
H6_RODRIGUES = [-120, 0, 720, 0, -480, 0, 64]


def _rodrigues(n):
    x = sp.symbols("x")
    expr = sp.expand(sp.simplify((-1) ** n * sp.exp(x**2) * sp.diff(sp.exp(-(x**2)), x, n)))
    return [int(c) for c in sp.Poly(expr, x).all_coeffs()[::-1]]


def _sign_changes(v):
    s = np.sign(v[v != 0])
    return int(np.sum(s[1:] != s[:-1]))


def test_hermite_examples():
    assert hermite_poly(0).coeffs == (1,)
    assert hermite_poly(2).coeffs == (-2, 0, 4)
    assert list(hermite_poly(6).coeffs) == H6_RODRIGUES == _rodrigues(6)


@pytest.mark.parametrize("n", [1, 3, 9, 14])
def test_hermite_matches_rodrigues(n):
    assert list(hermite_poly(n).coeffs) == _rodrigues(n)


@pytest.mark.parametrize("n", range(MAX_HERMITE_ORDER + 1))
def test_hermite_structure(n):
    h = hermite_poly(n)
    assert h.degree == n
    assert h.coeffs[-1] == 2**n
    assert all(c == 0 for c in h.coeffs[(n + 1) % 2::2])


def test_hermite_cap():
    with pytest.raises(UnsupportedOrderError):
        hermite_poly(MAX_HERMITE_ORDER + 1)
    with pytest.raises(ValueError):
        hermite_poly(-1)


def test_wrong_sign_examples():
    assert wrong_sign_eval(0, 0.0) == 1.0
    assert wrong_sign_eval(1, 1.0) == pytest.approx(2 * math.exp(-1), abs=1e-16)
    h = 1e-3
    # fourth-order central difference of -Ht_4
    fd = -(wrong_sign_eval(4, 0.7 - 2 * h) - 8 * wrong_sign_eval(4, 0.7 - h)
           + 8 * wrong_sign_eval(4, 0.7 + h) - wrong_sign_eval(4, 0.7 + 2 * h)) / (12 * h)
    assert wrong_sign_eval(5, 0.7) == pytest.approx(fd, abs=1e-9)
    with pytest.raises(DomainError):
        wrong_sign_eval(2, math.inf)


def test_recurrence_values_match_exact_horner():
    x = np.linspace(-3, 3, 61)
    for n in (0, 1, 5, 12):
        np.testing.assert_allclose(
            wrong_sign_eval(n, x), np.exp(-x * x) * poly_eval(hermite_poly(n).coeffs, x), rtol=1e-12, atol=1e-12
        )


def test_ladder_examples():
    for n in (1, 2, 7):
        assert ladder_down_identity(n).passed
    for n in (0, 3, 10):
        assert ladder_up_identity(n).passed
    assert ladder_up_identity(0).residual_norm == 0
    with pytest.raises(ValueError):
        ladder_down_identity(0)
    with pytest.raises(UnsupportedOrderError):
        ladder_up_identity(40)


@pytest.mark.parametrize("n", range(40))
def test_ladder_closure(n):
    assert ladder_up_identity(n).passed
    if n >= 1:
        assert ladder_down_identity(n).passed


def test_ladder_check_detects_a_wrong_relation():
    # the same arithmetic against the wrong target must leave a residual
    from tanherf import ladder as lad

    hn = list(lad._hermite_coeffs(4))
    wrong = lad._add(lad._deriv(hn), lad._scale(list(lad._hermite_coeffs(3)), -7))
    assert not lad.LadderCheck("down", 4, tuple(wrong)).passed


def test_dawson_eigen_examples():
    assert dawson_eigen_eval(0, 3.7) == 1.0
    assert dawson_eigen_eval(1, 0.0) == 0.0
    assert dawson_eigen_eval(2, 0.0) == 1.0
    assert dawson_eigen_eval(4, 1.0) == pytest.approx(dawson_derivative_ref(1.0, 3), abs=0)
    with pytest.raises(UnsupportedOrderError):
        dawson_eigen_eval(32, 0.1)


def test_dawson_recurrence_random():
    rng = np.random.default_rng(13)
    for _ in range(500):
        x = float(rng.uniform(-3, 3))
        k = int(rng.integers(1, 11))
        f = [dawson_derivative_ref(x, j) for j in (k - 1, k, k + 1)]
        assert abs(f[2] + 2 * x * f[1] + 2 * k * f[0]) <= 1e-8


def test_second_solution_examples():
    assert second_solution_check([0.0]) == 0.0
    assert second_solution_check(np.linspace(-4, 4, 100)) <= 1e-10
    f = dawson_derivatives(1.3, 2)
    assert abs(f[2] + 2 * 1.3 * f[1] + 2 * f[0]) <= 1e-8
    with pytest.raises(DomainError):
        dawson_quad(math.nan)


def test_shared_equation_distinct_solutions():
    for x in np.linspace(-3, 3, 25):
        rh, rf = shared_equation_residuals(float(x))
        assert abs(rh) <= 1e-8 and abs(rf) <= 1e-8
    # first derivatives at the origin: F'(0) = 1, Ht_0'(0) = -Ht_1(0) = 0
    assert abs(-wrong_sign_eval(1, 0.0) - dawson_derivative_ref(0.0, 1)) == 1.0


def test_shared_equation_higher_n():
    for n in (1, 4):
        rh, rf = shared_equation_residuals(0.8, n)
        assert abs(rh) <= 1e-8
        assert abs(rf) <= 1e-8


def test_zero_counts():
    x = np.linspace(-6, 6, 1201)
    assert _sign_changes(np.array([dawson_eigen_eval(1, float(v)) for v in x])) == 1
    assert _sign_changes(wrong_sign_eval(0, x)) == 0
    assert np.all(wrong_sign_eval(0, x) > 0)


def test_report_lines():
    lines = ladder_report(3)
    assert lines[0] == "up   n= 0 PASS residual_norm=0"
    assert len(lines) == 4 + 3
    assert all("PASS" in line for line in lines)
