import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from tanherf.errors import DomainError, UnsupportedOrderError
from tanherf.tanhseries import (
    BASSETT_ALPHA,
    MAX_ORDER,
    build_series,
    eval_integral_form,
    eval_power_basis,
    eval_series,
    max_abs_error,
    prefactor,
    sech_basis,
    series_rows,
)


def _sympy_coeffs(lam):
    # integrate P * (1 - t^2)^(lam-1) dt symbolically: the substitution t = tanh(alpha y)
    t = sp.symbols("t")
    p = 2 * sp.gamma(sp.Rational(2 * lam + 1, 2)) / (sp.sqrt(sp.pi) * sp.gamma(lam))
    poly = sp.Poly(sp.expand(sp.integrate(sp.simplify(p) * (1 - t**2) ** (lam - 1), (t, 0, t))), t)
    return [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()[::-1][1::2]]


def test_order_one_is_bassett_form():
    s = build_series(1, BASSETT_ALPHA)
    assert s.coeffs == (Fraction(1),)
    assert s(1.0) == pytest.approx(math.tanh(2 / math.sqrt(math.pi)), abs=1e-15)
    assert s(1.0) == pytest.approx(0.81046380599898809438, abs=1e-15)


def test_order_two_coefficients():
    assert build_series(2, 0.5).coeffs == (Fraction(3, 2), Fraction(-1, 2))


@pytest.mark.parametrize("lam", [1, 2, 3, 4, 7, 10])
def test_coefficients_match_symbolic_integration(lam):
    assert list(build_series(lam, 1.0).coeffs) == _sympy_coeffs(lam)


def test_prefactor_matches_gamma_ratio():
    for lam in range(1, 40):
        exact = 2 * math.exp(math.lgamma(lam + 0.5) - math.lgamma(lam)) / math.sqrt(math.pi)
        assert float(prefactor(lam)) == pytest.approx(exact, rel=1e-13)
    assert prefactor(1) == 1
    for lam in range(1, MAX_ORDER):
        assert prefactor(lam + 1) == prefactor(lam) * Fraction(2 * lam + 1, 2 * lam)


@pytest.mark.parametrize("lam", range(1, MAX_ORDER + 1))
def test_normalization_and_signs(lam):
    c = build_series(lam, 1.0).coeffs
    assert len(c) == lam
    assert sum(c) == 1
    assert all((ck > 0) == (k % 2 == 0) for k, ck in enumerate(c))
    assert sum(math.comb(lam - 1, k) * Fraction((-1) ** k, 2 * k + 1) for k in range(lam)) == 1 / prefactor(lam)


@pytest.mark.parametrize("lam", [1, 2, 5, 17, 40, 64])
def test_sech_basis_is_the_same_polynomial(lam):
    # t * sum d_n (1 - t^2)^n expanded back into odd powers of t must give c_k
    t = sp.symbols("t")
    d = sech_basis(lam)
    expr = sp.expand(t * sum(sp.Rational(dn.numerator, dn.denominator) * (1 - t**2) ** n for n, dn in enumerate(d)))
    coeffs = sp.Poly(expr, t).all_coeffs()[::-1][1::2]
    assert [Fraction(int(c.p), int(c.q)) for c in coeffs] == list(build_series(lam, 1.0).coeffs)


def test_order_cap():
    with pytest.raises(UnsupportedOrderError):
        build_series(0, 1.0)
    with pytest.raises(UnsupportedOrderError):
        build_series(MAX_ORDER + 1, 1.0)
    with pytest.raises(ValueError):
        build_series(3, -1.0)


def test_eval_examples():
    for lam in (1, 4, 30):
        assert eval_series(build_series(lam, 0.7), 0.0) == 0.0
    assert abs(eval_series(build_series(10, 0.3224), 20.0) - 1.0) < 1e-12
    with pytest.raises(DomainError):
        eval_series(build_series(2, 1.0), math.inf)


def test_power_basis_agrees_for_small_orders():
    x = np.linspace(-5, 5, 2001)
    for lam in (1, 2, 5, 10):
        s = build_series(lam, 0.6)
        assert np.max(np.abs(eval_series(s, x) - eval_power_basis(s, x))) < 1e-13


def test_high_order_stays_accurate_against_quadrature():
    # the alternating power basis loses ~1e-9 here; the sech basis must not
    for lam, alpha in ((30, 0.183755), (64, 0.125)):
        for x in (0.5, 3.0, 8.0, 15.0):
            assert eval_series(build_series(lam, alpha), x) == pytest.approx(
                eval_integral_form(lam, alpha, x), abs=1e-12
            )


def test_integral_form_examples():
    assert eval_integral_form(1, 1.0, 0.0) == 0.0
    s2 = build_series(2, 0.778004)
    assert abs(eval_integral_form(2, 0.778004, 1.0) - s2(1.0)) <= 1e-10
    s5 = build_series(5, 0.464819)
    assert abs(eval_integral_form(5, 0.464819, 3.0) - s5(3.0)) <= 1e-10


def test_oracle_equivalence_random():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        lam = int(rng.integers(1, 11))
        alpha = float(rng.uniform(0.1, 2.0))
        x = float(rng.uniform(-5.0, 5.0))
        assert abs(eval_series(build_series(lam, alpha), x) - eval_integral_form(lam, alpha, x)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(
    lam=st.integers(1, MAX_ORDER),
    alpha=st.floats(0.05, 3.0),
)
def test_odd_increasing_bounded(lam, alpha):
    s = build_series(lam, alpha)
    # strictly increasing only before the value rounds to +-1
    inner = 3.0 / s.slope_at_origin
    x = np.linspace(-inner, inner, 401)
    v = s(x)
    np.testing.assert_array_equal(s(-x), -v)
    assert np.all(np.diff(v) > 0)
    wide = s(np.linspace(-40 / alpha, 40 / alpha, 801))
    assert np.all(np.diff(wide) >= 0)
    assert np.all(np.abs(wide) <= 1.0)


@pytest.mark.parametrize("lam,alpha", [(1, 1.2), (2, 0.78), (7, 0.39), (30, 0.18)])
def test_slope_at_origin(lam, alpha):
    s = build_series(lam, alpha)
    h = 1e-5
    fd = (s(h) - s(-h)) / (2 * h)
    assert fd == pytest.approx(s.slope_at_origin, rel=1e-8)
    assert s.slope_at_origin == pytest.approx(alpha * float(prefactor(lam)))


def test_max_abs_error_claims():
    _, e10 = max_abs_error(build_series(10, 0.3224))
    _, e30 = max_abs_error(build_series(30, 0.183755))
    assert e10 < 0.0022
    assert e30 < 0.00072


def test_max_abs_error_matches_brute_force_scan():
    s = build_series(1, BASSETT_ALPHA)
    x = np.linspace(0, 8, 1_000_001)
    brute = np.max(np.abs(special.erf(x) - np.tanh(BASSETT_ALPHA * x)))
    xs, e = max_abs_error(s)
    assert e >= brute - 1e-15
    assert e == pytest.approx(brute, abs=1e-11)
    assert xs == pytest.approx(x[np.argmax(np.abs(special.erf(x) - np.tanh(BASSETT_ALPHA * x)))], abs=1e-5)


def test_max_abs_error_rejects_empty_grid():
    with pytest.raises(ValueError):
        max_abs_error(build_series(2, 1.0), [])


def test_series_rows():
    rows = series_rows(build_series(3, 0.6))
    assert [r["k"] for r in rows] == [0, 1, 2]
    assert sum(r["c_k"] for r in rows) == pytest.approx(1.0)
