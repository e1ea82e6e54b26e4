"""Central numerical tolerances.

Every verification threshold used across the library lives here, so the
whole surface can be tightened or relaxed with a single knob (see
``TOL``, a module-level mutable instance).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Tolerances:
    #: spectral-norm bound on ``U†U - I`` for anything claimed unitary
    unitarity: float = 1e-10
    #: absolute bound on ``‖UΛU† - A‖`` for eigensystem reconstructions
    reconstruction: float = 1e-8
    #: absolute slack added to block-encoding error claims during verification
    #: (scaled by the normalization factor, which sets the rounding floor)
    verify_slack: float = 1e-12
    #: non-normality threshold (relative to matrix norm) for the fast
    #: eigendecomposition path of the matrix exponential
    normality: float = 1e-10
    #: |λt| below which (e^{λt}-1)/(λt) switches to its Taylor series
    kernel_series_switch: float = 1e-6
    #: claimed error attached to zero-error (exact) solver constructions
    exact_solver: float = 1e-9
    #: generic "numerically zero" threshold
    zero: float = 1e-12
    #: absolute refinement target of the reference quadrature
    quadrature: float = 1e-12


TOL = Tolerances()

#: amplitude-amplification repeat constant: repeats ≈ AA_CONSTANT / sqrt(p).
#: Reported in solve reports, never asserted (the boost is only Ω(1)).
AA_CONSTANT = 2.0

#: documented constant hidden in the O(·) query count of block-encoded
#: matrix inversion: queries = ceil(INVERSE_QUERY_CONSTANT * (1/δ) * ln(1/(δε)))
INVERSE_QUERY_CONSTANT = 1.0

#: cap on Riemann-sum node counts for the time-dependent solver
MAX_RIEMANN_NODES = 10**6
