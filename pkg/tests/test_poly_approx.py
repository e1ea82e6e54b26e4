"""Certified Chebyshev approximants and the degree-scan power law."""

import math

import numpy as np
import pytest

from ffode import (
    approx_exp_shifted, approx_gaussian, approx_gaussian_integral,
    certified_degree_scan,
)
from ffode.poly_approx import certify_sup_error, chebyshev_grid, target_function


def test_exp_shifted_value_at_one():
    p = approx_exp_shifted(5.0, 1e-8)
    assert p(1.0) == pytest.approx(1.0, abs=1e-8)


def test_exp_shifted_zero_horizon_is_constant():
    p = approx_exp_shifted(0.0, 1e-10)
    assert p.degree() == 0
    assert p(0.3) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_trivial_values():
    p = approx_gaussian(7.0, 1e-8)
    assert p(0.0) == pytest.approx(1.0, abs=1e-8)
    q = approx_gaussian(0.0, 1e-10)
    assert q.degree() == 0
    assert q(0.9) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_large_beta_point_value():
    p = approx_gaussian(400.0, 1e-6)
    assert p(0.1) == pytest.approx(math.exp(-4.0), abs=1e-6)


def test_gaussian_integral_values():
    p = approx_gaussian_integral(1.0, 1e-9)
    assert p(0.0) == pytest.approx(1.0, abs=1e-9)
    assert p(1.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-9)
    q = approx_gaussian_integral(0.0, 1e-10)
    assert q(0.5) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_variants_are_even():
    for p in (approx_gaussian(50.0, 1e-7), approx_gaussian_integral(50.0, 1e-7)):
        assert np.max(np.abs(p.coefficients[1::2])) <= 1e-12
        x = chebyshev_grid(101)
        assert np.max(np.abs(p(x) - p(-x))) < 1e-12


def test_certified_error_survives_denser_resampling():
    # re-certify on a 10x denser grid: the claimed sup-error must stand
    for target, param in (("exp-shifted", 37.0), ("gaussian", 37.0),
                          ("gaussian-integral", 37.0)):
        builder = {"exp-shifted": approx_exp_shifted,
                   "gaussian": approx_gaussian,
                   "gaussian-integral": approx_gaussian_integral}[target]
        p = builder(param, 1e-6)
        f = target_function(target, param)
        dense = certify_sup_error(f, p, p.degree(), density=10)
        assert dense <= 1e-6 * (1.0 + 1e-6)


def test_degree_monotonicity_in_parameter_and_eps():
    degs = [approx_exp_shifted(t, 1e-6).degree() for t in (4.0, 16.0, 64.0)]
    assert degs == sorted(degs)
    d_loose = approx_gaussian(64.0, 1e-3).degree()
    d_tight = approx_gaussian(64.0, 1e-9).degree()
    assert d_loose <= d_tight


def test_composition_reproduces_matrix_exponential():
    # evaluating the approximant at 1 + λ reproduces e^{λT} on [-1, -δ]
    T, eps = 9.0, 1e-8
    p = approx_exp_shifted(T, eps)
    lam = np.linspace(-1.0, -0.1, 13)
    assert np.max(np.abs(p(1.0 + lam) - np.exp(lam * T))) <= eps


def test_degree_scan_validation():
    with pytest.raises(ValueError):
        certified_degree_scan("exp-shifted", [16, 64, 256], 1e-6)
    with pytest.raises(ValueError):
        certified_degree_scan("exp-shifted", [16, 32, 64, 128], 1e-6)


def test_degree_scan_constant_target():
    scan = certified_degree_scan("constant", [16, 64, 256, 1024], 1e-6)
    assert list(scan.degrees) == [0, 0, 0, 0]
    assert scan.fitted_exponent == 0.0


def test_degree_scan_sqrt_law_exponents():
    for target in ("exp-shifted", "gaussian"):
        scan = certified_degree_scan(target, [16, 64, 256, 1024], 1e-6)
        assert 0.40 <= scan.fitted_exponent <= 0.65, \
            f"{target}: exponent {scan.fitted_exponent}"
        degs = list(scan.degrees)
        assert degs == sorted(degs)
