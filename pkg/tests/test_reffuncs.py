import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from tanherf.errors import AccuracyError, DomainError, UnsupportedOrderError
from tanherf.reffuncs import (
    DEFAULT_CONFIG,
    OracleConfig,
    dawson_derivative_ref,
    dawson_ode,
    dawson_ref,
    erf_quad,
    erf_ref,
)

TOL = DEFAULT_CONFIG.abs_tol

# 40-digit quadrature / ODE values, rounded to double
ERF_1 = 0.84270079294971486934
DAWSON_1 = 0.53807950691276841914


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(abs_tol=1e-10)
    with pytest.raises(ValueError):
        OracleConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        OracleConfig(small_x_cutoff=0.0)


def test_erf_examples():
    assert erf_ref(0.0) == 0.0
    assert abs(erf_ref(10.0) - 1.0) < TOL
    assert abs(erf_ref(1.0) - ERF_1) < TOL
    assert abs(erf_ref(1.0) - erf_quad(1.0)) < TOL


@pytest.mark.parametrize("x", [math.inf, -math.inf, math.nan])
def test_non_finite_rejected(x):
    with pytest.raises(DomainError):
        erf_ref(x)
    with pytest.raises(DomainError):
        dawson_ref(x)


def test_erf_against_scipy_dense():
    x = np.linspace(-12, 12, 4801)
    assert np.max(np.abs(erf_ref(x) - special.erf(x))) < 5 * TOL


@pytest.mark.parametrize("x", [0.1, 0.7, 2.0, 2.99, 3.01, 4.5, 6.0])
def test_erf_branches_match_quadrature(x):
    assert abs(erf_ref(x) - erf_quad(x)) < 2 * TOL


def test_dawson_examples():
    assert dawson_ref(0.0) == 0.0
    x = 1e-8
    assert abs(dawson_ref(x) / x - 1.0) < 1e-12
    assert abs(dawson_ref(1.0) - DAWSON_1) < TOL
    assert abs(dawson_ref(1.0) - dawson_ode([1.0])[0]) < 10 * TOL


def test_dawson_against_scipy_dense():
    x = np.linspace(-30, 30, 6001)
    assert np.max(np.abs(dawson_ref(x) - special.dawsn(x))) < 5 * TOL


def test_asymptotic_branch_refuses_low_cutoff():
    cfg = OracleConfig(small_x_cutoff=3.0)
    with pytest.raises(AccuracyError):
        dawson_ref(3.5, cfg)


def test_derivative_examples():
    assert dawson_derivative_ref(0.0, 0) == 0.0
    assert dawson_derivative_ref(0.0, 1) == 1.0
    assert dawson_derivative_ref(0.0, 2) == 0.0


def _richardson_third(f, x, h):
    # fourth-order central stencil for f''' at steps h and h/2, then one Richardson step
    def d3(h):
        return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h)
                + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) / (8 * h**3)

    return (16 * d3(h / 2) - d3(h)) / 15


def test_third_derivative_matches_finite_differences():
    fd = _richardson_third(dawson_ref, 1.0, 1e-2)
    assert dawson_derivative_ref(1.0, 3) == pytest.approx(fd, abs=1e-8)
    # arbitrary-precision differentiation of the defining integral
    assert dawson_derivative_ref(1.0, 3) == pytest.approx(2.1523180276510736765, abs=1e-12)


def test_derivative_depth_limit():
    dawson_derivative_ref(0.5, 30)
    with pytest.raises(UnsupportedOrderError):
        dawson_derivative_ref(0.5, 31)


def test_oddness_random():
    rng = np.random.default_rng(11)
    x = rng.uniform(-6, 6, 1000)
    assert np.max(np.abs(erf_ref(-x) + erf_ref(x))) <= 2 * TOL
    assert np.max(np.abs(dawson_ref(-x) + dawson_ref(x))) <= 2 * TOL


def test_ode_residual_random():
    rng = np.random.default_rng(12)
    for x in rng.uniform(-6, 6, 1000):
        r = dawson_derivative_ref(x, 1) + 2 * x * dawson_ref(x) - 1
        assert abs(r) <= 10 * TOL


def test_series_cross_validated_by_ode():
    xs = np.linspace(-10, 10, 200)
    assert np.max(np.abs(dawson_ref(xs) - dawson_ode(xs))) <= 10 * TOL


def test_erf_monotone_saturation():
    x = np.linspace(-6, 6, 1000)
    v = erf_ref(x)
    # beyond |x| ~ 5.9 erf rounds to +-1 in double precision
    assert np.all(np.diff(v) >= 0)
    inner = np.abs(x) <= 5.5
    assert np.all(np.diff(v[inner]) > 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-40, max_value=40, allow_nan=False))
def test_erf_bounded_and_odd(x):
    v = erf_ref(x)
    assert -1.0 <= v <= 1.0
    assert erf_ref(-x) == -v


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-1e3, max_value=1e3, allow_nan=False))
def test_dawson_odd_and_bounded_by_peak(x):
    v = dawson_ref(x)
    assert dawson_ref(-x) == -v
    assert abs(v) <= 0.5410442246 + 1e-12
