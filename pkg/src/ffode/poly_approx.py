"""Low-degree polynomial approximants that power quadratic fast-forwarding.

Three targets on [-1, 1]:

* ``exp-shifted``      e^{-T(1-x)}
* ``gaussian``         e^{-beta x^2}
* ``gaussian-integral``  ∫₀¹ e^{-beta τ x²} dτ  =  (1 - e^{-beta x²})/(beta x²)

Each approximant is a Chebyshev interpolant whose degree is the smallest one
whose sup error, certified on a dense Chebyshev grid of at least 8d+64
points, meets the request.  The gaussian variants are explicitly even.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev

from .config import TOL

TARGETS = ("exp-shifted", "gaussian", "gaussian-integral", "constant")

_MAX_DEGREE = 4096


@dataclass
class ApproxPolynomial:
    """A certified Chebyshev approximant on [-1, 1]."""

    cheb: Chebyshev
    target: str
    parameter: float
    requested_error: float
    achieved_error: float

    def __call__(self, x):
        return self.cheb(x)

    def degree(self) -> int:
        return int(self.cheb.degree())

    @property
    def coefficients(self) -> np.ndarray:
        return self.cheb.coef

    def scaled(self, factor: float) -> Chebyshev:
        """The interpolant times a scalar (used to meet QSVT's |P| ≤ 1/2)."""
        return self.cheb * factor


def chebyshev_grid(num_points: int) -> np.ndarray:
    """First-kind Chebyshev points on [-1, 1]."""
    return np.cos(np.pi * (np.arange(num_points) + 0.5) / num_points)


def certify_sup_error(f, p, degree: int, density: int = 1) -> float:
    """Max |f - p| on a grid of density*(8*degree + 64) Chebyshev points."""
    x = chebyshev_grid(density * (8 * degree + 64))
    return float(np.max(np.abs(f(x) - p(x))))


def _shifted_exp(T: float):
    def f(x):
        return np.exp(-T * (1.0 - np.asarray(x, dtype=float)))
    return f


def _gaussian(beta: float):
    def f(x):
        return np.exp(-beta * np.asarray(x, dtype=float) ** 2)
    return f


def _gaussian_integral(beta: float):
    # closed form (1 - e^{-beta x^2})/(beta x^2); the removable singularity at
    # x = 0 is filled by a 3-term series to avoid cancellation
    def f(x):
        z = beta * np.asarray(x, dtype=float) ** 2
        small = np.abs(z) < TOL.kernel_series_switch
        zs = np.where(small, 0.0, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            exact = -np.expm1(-zs) / zs
        series = 1.0 - z / 2.0 + z ** 2 / 6.0
        return np.where(small, series, exact)
    return f


def target_function(target: str, parameter: float):
    if target == "exp-shifted":
        return _shifted_exp(parameter)
    if target == "gaussian":
        return _gaussian(parameter)
    if target == "gaussian-integral":
        return _gaussian_integral(parameter)
    if target == "constant":
        return lambda x: np.ones_like(np.asarray(x, dtype=float))
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")


def _even_part(p: Chebyshev) -> Chebyshev:
    coef = p.coef.copy()
    coef[1::2] = 0.0
    return Chebyshev(coef)


def _fit_minimal(f, eps: float, even: bool) -> tuple[Chebyshev, float]:
    """Scan degrees from zero until the grid-certified error passes."""
    for d in range(_MAX_DEGREE + 1):
        p = Chebyshev.interpolate(f, d)
        if even:
            p = _even_part(p)
        err = certify_sup_error(f, p, d)
        if err <= eps:
            return p, err
    raise RuntimeError(f"no certified approximant up to degree {_MAX_DEGREE}")


def _build(target: str, parameter: float, eps: float) -> ApproxPolynomial:
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    if parameter < 0:
        raise ValueError("parameter must be nonnegative")
    f = target_function(target, parameter)
    even = target in ("gaussian", "gaussian-integral")
    cheb, err = _fit_minimal(f, eps, even)
    return ApproxPolynomial(cheb, target, float(parameter), float(eps), err)


def approx_exp_shifted(T: float, eps: float) -> ApproxPolynomial:
    """Certified approximant of e^{-T(1-x)}; degree O(sqrt(max(T, L)·L))."""
    return _build("exp-shifted", T, eps)


def approx_gaussian(beta: float, eps: float) -> ApproxPolynomial:
    """Certified even approximant of e^{-beta x^2}."""
    return _build("gaussian", beta, eps)


def approx_gaussian_integral(beta: float, eps: float) -> ApproxPolynomial:
    """Certified even approximant of ∫₀¹ e^{-beta τ x²} dτ."""
    return _build("gaussian-integral", beta, eps)


@dataclass
class DegreeScan:
    """Minimal certified degrees across a parameter grid plus a power-law fit."""

    target: str
    eps: float
    parameters: np.ndarray
    degrees: np.ndarray
    fitted_exponent: float

    def rows(self):
        return list(zip(self.parameters.tolist(), self.degrees.tolist()))


def certified_degree_scan(target: str, parameters, eps: float) -> DegreeScan:
    """Minimal certified degree against a parameter grid, with a log-log fit.

    The grid needs at least four values spanning at least two decades so the
    fitted exponent is meaningful; the sqrt law predicts an exponent of 0.5
    for the exponential and gaussian targets.
    """
    params = np.asarray(sorted(float(p) for p in parameters))
    if params.size < 4:
        raise ValueError("degree scan needs at least 4 parameter values")
    # "about two decades": the canonical grid {16, 64, 256, 1024} spans 64x
    if params[0] <= 0 or params[-1] / params[0] < 50.0:
        raise ValueError("degree scan grid must span roughly two decades")
    degrees = np.array([_build(target, p, eps).degree() for p in params])
    if np.all(degrees == 0):
        exponent = 0.0
    else:
        exponent = float(np.polyfit(np.log(params),
                                    np.log(np.maximum(degrees, 1)), 1)[0])
    return DegreeScan(target, float(eps), params, degrees, exponent)
