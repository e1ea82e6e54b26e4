"""Exact/high-accuracy classical reference for every solver.

Implements the Duhamel formula u(T) = e^{AT} u(0) + ∫₀ᵀ e^{A(T-s)} b(s) ds
through eigendecomposition with closed-form per-eigenvalue kernels, plus the
diagonal kernels f(λ,t), C(α,β,T) and the complex split f+ig used by the
eigen-oracle solvers.  This module is the independent oracle the solvers are
tested against, so it never reuses their construction path.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg as sla

from .config import TOL
from .linalg import EigenSystem, as_square, as_vector


@dataclass
class SampledSource:
    """A time-dependent inhomogeneous term given as a callback.

    ``func(t)`` returns the vector b(t); ``derivative`` (a callback) or
    ``derivative_sup`` (a bound on sup_t ‖db/dt‖) is needed by quadrature
    error bounds.  Callbacks must be reentrant.
    """

    func: Callable[[float], np.ndarray]
    derivative: Callable[[float], np.ndarray] | None = None
    derivative_sup: float | None = None

    def __call__(self, t: float) -> np.ndarray:
        return as_vector(self.func(t))


@dataclass
class OdeProblem:
    """du/dt = A u + b(t) on [0, T] with u(0) = u0.

    ``coefficient`` is a dense matrix or an :class:`EigenSystem`;
    ``inhomogeneous`` is None, a constant vector, or a :class:`SampledSource`.
    """

    coefficient: np.ndarray | EigenSystem
    u0: np.ndarray
    horizon: float
    inhomogeneous: np.ndarray | SampledSource | None = None

    def __post_init__(self):
        if not isinstance(self.coefficient, EigenSystem):
            self.coefficient = as_square(self.coefficient)
        self.u0 = as_vector(self.u0)
        n = self.dim
        if self.u0.size != n:
            raise ValueError("u0 dimension does not match the coefficient")
        if self.horizon <= 0:
            raise ValueError("horizon T must be positive")
        if self.inhomogeneous is not None and not isinstance(
                self.inhomogeneous, SampledSource):
            self.inhomogeneous = as_vector(self.inhomogeneous)
            if self.inhomogeneous.size != n:
                raise ValueError("b dimension does not match the coefficient")

    @property
    def dim(self) -> int:
        if isinstance(self.coefficient, EigenSystem):
            return self.coefficient.dim
        return self.coefficient.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        if isinstance(self.coefficient, EigenSystem):
            return self.coefficient.matrix
        return self.coefficient

    @property
    def is_homogeneous(self) -> bool:
        if self.inhomogeneous is None:
            return True
        if isinstance(self.inhomogeneous, SampledSource):
            return False
        return bool(np.all(np.abs(self.inhomogeneous) < TOL.zero))


def exp_integral(lam: complex, t: float) -> complex:
    """∫₀ᵗ e^{λ(t-s)} ds, numerically stable for small |λt|."""
    z = lam * t
    if abs(z) < TOL.kernel_series_switch:
        return t * (1.0 + z / 2.0 + z * z / 6.0)
    return (np.exp(z) - 1.0) / lam


def kernel_f(lam: float, t: float) -> float:
    """f(λ,t) = (1/t)∫₀ᵗ e^{λ(t-s)} ds for real λ ≤ 0: 1 at λ=0, in (0,1]."""
    if t <= 0:
        raise ValueError("t must be positive")
    if lam > TOL.zero:
        raise ValueError("kernel_f requires a nonpositive eigenvalue")
    lam = min(lam, 0.0)
    if lam == 0.0:
        return 1.0
    return float(np.real(exp_integral(lam, t)) / t)


def kernel_C(alpha: float, beta: float, T: float) -> float:
    """Normalization C(α,β,T): T, 2/β, or (e^{αT}-1)/α by case."""
    if T <= 0:
        raise ValueError("T must be positive")
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if abs(alpha) <= TOL.zero:
        return T if beta <= TOL.zero else 2.0 / beta
    return float((np.exp(alpha * T) - 1.0) / alpha)


def kernel_fg_complex(lam: complex, T: float, C: float) -> tuple[float, float]:
    """Real/imaginary split of C⁻¹ ∫₀ᵀ e^{λ(T-s)} ds; magnitude must be ≤ 1.

    A magnitude above 1 signals that the (α, β) pair used to compute C is
    inconsistent with λ, and raises.
    """
    if T <= 0 or C <= 0:
        raise ValueError("T and C must be positive")
    val = exp_integral(complex(lam), T) / C
    if abs(val) > 1.0 + 1e-12:
        raise ValueError(
            f"|f+ig| = {abs(val):.6g} > 1: normalization C is inconsistent "
            "with the eigenvalue")
    return float(val.real), float(val.imag)


def _diagonalize(a: np.ndarray):
    """General eigendecomposition with a conditioning check."""
    w, v = np.linalg.eig(a)
    cond = np.linalg.cond(v)
    return w, v, cond


def _gauss_panels(g, T: float, order: int = 12):
    """Composite Gauss-Legendre quadrature of a vector-valued g over [0, T],
    with panel doubling until the refinement stalls below TOL.quadrature."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    prev = None
    panels = 1
    while panels <= 2 ** 14:
        total = 0.0
        width = T / panels
        for k in range(panels):
            left = k * width
            s = left + (nodes + 1.0) * width / 2.0
            w = weights * width / 2.0
            total = total + sum(wi * g(si) for si, wi in zip(s, w))
        if prev is not None and np.linalg.norm(total - prev) < TOL.quadrature:
            return total
        prev = total
        panels *= 2
    warnings.warn("reference quadrature hit the panel cap before reaching "
                  f"{TOL.quadrature}; returning the finest refinement")
    return prev


def solve_reference(p: OdeProblem) -> np.ndarray:
    """u(T) by the Duhamel formula, to ~1e-10 relative accuracy.

    Diagonalizable coefficients use closed-form per-eigenvalue kernels
    (constant b) or adaptive Gauss-Legendre quadrature (sampled b); a badly
    conditioned eigenbasis falls back to expm-based quadrature with a warning.
    """
    T = p.horizon
    if isinstance(p.coefficient, EigenSystem):
        u = p.coefficient.basis
        w = p.coefficient.eigenvalues
        vinv = u.conj().T
        v = u
        cond = 1.0
    else:
        w, v, cond = _diagonalize(p.coefficient)
        vinv = None if cond > 1e8 else np.linalg.inv(v)

    if vinv is not None:
        out = v @ (np.exp(w * T) * (vinv @ p.u0))
        if not p.is_homogeneous:
            if isinstance(p.inhomogeneous, SampledSource):
                src = p.inhomogeneous

                def g(s):
                    return v @ (np.exp(w * (T - s)) * (vinv @ src(s)))

                out = out + _gauss_panels(g, T)
            else:
                kern = np.array([exp_integral(wj, T) for wj in w])
                out = out + v @ (kern * (vinv @ p.inhomogeneous))
        return out

    # non-diagonalizable (or numerically nearly so): expm path
    warnings.warn("coefficient eigenbasis is ill-conditioned "
                  f"(cond={cond:.2e}); falling back to expm quadrature")
    a = p.matrix
    out = sla.expm(a * T) @ p.u0
    if not p.is_homogeneous:
        if isinstance(p.inhomogeneous, SampledSource):
            src = p.inhomogeneous

            def g(s):
                return sla.expm(a * (T - s)) @ src(s)

            out = out + _gauss_panels(g, T)
        else:
            b = p.inhomogeneous

            def g(s):
                return sla.expm(a * (T - s)) @ b

            out = out + _gauss_panels(g, T)
    return out
