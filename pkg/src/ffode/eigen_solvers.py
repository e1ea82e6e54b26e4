"""Exponentially fast-forwarded solvers for known eigensystems.

When A = U Λ U† with an implementable eigenbasis and classically computable
eigenvalues, e^{AT} and the Duhamel integral are zero-error block-encodings
built from constant numbers of oracle queries (6 in the real nonpositive
case, 10 in the general complex case, plus 2 uses of U), independent of T,
‖A‖ and the dimension.  A Riemann-sum linear combination of states extends
this to time-dependent inhomogeneous terms.

Register-level binary encodings of eigenvalue data are simulated as exact
real-valued tags attached to each eigenindex: the compute / controlled
rotation / uncompute sandwich nets to exact per-index amplitude and phase
factors, which is how the block matrices below are assembled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import MAX_RIEMANN_NODES, TOL
from .block_encoding import (
    GATES, O_BNORM, O_BT, O_EXP, O_F, O_G, O_LAMBDA, O_LAMBDA_I, O_LAMBDA_R,
    O_PROD, O_T, O_U, U_EIG, BlockEncoding, QueryLedger, exact_dilation,
)
from .linalg import EigenSystem, as_vector, global_phase_distance
from .qsvt_solvers import SolveReport, lcs_combine_and_measure, repeat_estimates
from .reference import (
    OdeProblem, SampledSource, exp_integral, kernel_C, kernel_f,
    kernel_fg_complex, solve_reference,
)

_REAL_TOL = 1e-12


@dataclass
class EigenOracleSet:
    """Eigen-oracle access: eigensystem plus the shift/floor parameters.

    ``alpha_shift`` is the normalization exponent (at least the largest
    eigenvalue real part; the ``nonneg_shift`` variant additionally clamps it
    at zero, as the time-dependent solver requires).  ``beta_floor`` is a
    lower bound on |Im λ| over the purely imaginary eigenvalues, used only by
    the C(α,β,T) normalization.  Oracles are treated as exact real-valued
    maps.
    """

    eigen: EigenSystem
    alpha_shift: float
    beta_floor: float = 0.0
    nonneg_shift: bool = False
    exact: bool = True

    def __post_init__(self):
        lam = self.eigen.eigenvalues
        max_re = float(np.max(lam.real))
        if self.alpha_shift < max_re - _REAL_TOL:
            raise ValueError(
                f"alpha_shift {self.alpha_shift} is below the largest "
                f"eigenvalue real part {max_re}")
        if self.nonneg_shift and self.alpha_shift < 0.0:
            raise ValueError("the nonnegative-shift variant needs alpha_shift ≥ 0")
        if self.beta_floor < 0:
            raise ValueError("beta_floor must be nonnegative")
        imag_only = np.abs(lam.real) <= _REAL_TOL
        nonzero_imag = imag_only & (np.abs(lam.imag) > _REAL_TOL)
        if np.any(nonzero_imag):
            floor = float(np.min(np.abs(lam.imag[nonzero_imag])))
            if self.beta_floor > floor + _REAL_TOL:
                raise ValueError(
                    f"beta_floor {self.beta_floor} exceeds the smallest "
                    f"purely-imaginary magnitude {floor}")

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eigen.eigenvalues

    @property
    def real_nonpositive(self) -> bool:
        lam = self.eigenvalues
        return bool(np.all(np.abs(lam.imag) <= _REAL_TOL)
                    and np.all(lam.real <= _REAL_TOL))

    @classmethod
    def from_eigensystem(cls, eigen: EigenSystem, *, variant: str = "plain",
                         alpha_shift: float | None = None,
                         beta_floor: float | None = None) -> "EigenOracleSet":
        """Auto-fill the shift and floor from the spectrum.

        plain:  α = 0 for real nonpositive spectra (the 6-query lemmas apply
                unshifted), otherwise the largest real part.
        nonneg: α̃ = max(0, largest real part), the time-dependent variant.

        beta_floor defaults to min |Im λ| over the purely imaginary
        eigenvalues when the whole spectrum is purely imaginary and nonzero
        (the Hamiltonian-like case where C = 2/β pays off) and to 0 otherwise,
        which keeps the C(α,β,T) normalization valid for mixed spectra.
        """
        lam = eigen.eigenvalues
        max_re = float(np.max(lam.real))
        if alpha_shift is None:
            if variant == "nonneg":
                alpha_shift = max(0.0, max_re)
            elif np.all(np.abs(lam.imag) <= _REAL_TOL) and max_re <= _REAL_TOL:
                alpha_shift = 0.0
            else:
                alpha_shift = max_re
        if beta_floor is None:
            all_imag = np.all(np.abs(lam.real) <= _REAL_TOL)
            none_zero = np.all(np.abs(lam) > _REAL_TOL)
            if abs(max_re) <= _REAL_TOL and all_imag and none_zero:
                beta_floor = float(np.min(np.abs(lam.imag)))
            else:
                beta_floor = 0.0
        return cls(eigen, float(alpha_shift), float(beta_floor),
                   nonneg_shift=(variant == "nonneg"))


def _real_case(o: EigenOracleSet) -> bool:
    return o.real_nonpositive and abs(o.alpha_shift) <= _REAL_TOL


def _dilate_diagonal(o: EigenOracleSet, factors: np.ndarray, alpha: float,
                     target: np.ndarray, ledger: QueryLedger) -> BlockEncoding:
    mags = np.abs(factors)
    if np.max(mags) > 1.0 + 1e-10:
        raise ValueError(f"diagonal factor exceeds 1: {np.max(mags)}")
    factors = factors / np.where(mags > 1.0, mags, 1.0)
    u = o.eigen.basis
    m = (u * factors) @ u.conj().T
    be = exact_dilation(m, 1.0, ledger=ledger)
    return be.reattached(target, TOL.verify_slack * max(1.0, alpha), alpha=alpha)


def be_exp_eigen(o: EigenOracleSet, T: float) -> BlockEncoding:
    """(e^{αT}, ·, 0)-block-encoding of e^{AT} from the eigen oracles.

    Real nonpositive spectra with zero shift use the 6-query circuit
    (O_T, O_Λ, O_exp computed and uncomputed); anything else uses the
    10-query complex circuit with separate real/imaginary eigenvalue
    registers and a phase gate.  Both charge exactly 2 uses of U.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    lam = o.eigenvalues
    alpha = o.alpha_shift
    factors = np.exp((lam - alpha) * T)
    target = o.eigen.apply_function(lambda w: np.exp(w * T))
    if _real_case(o):
        ledger = QueryLedger({O_T: 2, O_LAMBDA: 2, O_EXP: 2, U_EIG: 2, GATES: 1})
    else:
        ledger = QueryLedger({O_T: 2, O_LAMBDA_R: 2, O_EXP: 2, O_LAMBDA_I: 2,
                              O_PROD: 2, U_EIG: 2, GATES: 4})
    return _dilate_diagonal(o, factors, math.exp(alpha * T), target, ledger)


def be_duhamel_eigen(o: EigenOracleSet, T: float) -> BlockEncoding:
    """Zero-error block-encoding of ∫₀ᵀ e^{A(T-s)} ds.

    Normalization T with the real kernel f(λ,T) for real nonpositive
    spectra; C(α,β,T) with the complex split f+ig otherwise (α recomputed
    as the largest real part, β from the oracle set's floor).
    """
    if T <= 0:
        raise ValueError("T must be positive")
    lam = o.eigenvalues
    target = o.eigen.apply_function(
        lambda w: np.array([exp_integral(z, T) for z in w]))
    if _real_case(o):
        factors = np.array([kernel_f(float(z.real), T) for z in lam],
                           dtype=complex)
        norm = T
        ledger = QueryLedger({O_T: 2, O_LAMBDA: 2, O_F: 2, U_EIG: 2, GATES: 1})
    else:
        alpha = float(np.max(lam.real))
        if abs(alpha) <= _REAL_TOL:
            alpha = 0.0
        norm = kernel_C(alpha, o.beta_floor, T)
        fg = [kernel_fg_complex(z, T, norm) for z in lam]
        factors = np.array([complex(f, g) for f, g in fg])
        ledger = QueryLedger({O_T: 2, O_LAMBDA_R: 2, O_LAMBDA_I: 2, O_F: 2,
                              O_G: 2, U_EIG: 2, GATES: 4})
    return _dilate_diagonal(o, factors, norm, target, ledger)


def _check_problem(p: OdeProblem, o: EigenOracleSet) -> None:
    if isinstance(p.coefficient, EigenSystem):
        same = (p.coefficient is o.eigen or np.allclose(
            p.coefficient.matrix, o.eigen.matrix, atol=TOL.reconstruction))
        if not same:
            raise ValueError("problem eigensystem disagrees with the oracle set")
    else:
        from .linalg import spectral_norm
        if spectral_norm(p.coefficient - o.eigen.matrix) > TOL.reconstruction:
            raise ValueError("problem coefficient disagrees with the oracle set")


def solve_eigen_homogeneous(p: OdeProblem, o: EigenOracleSet) -> SolveReport:
    """Apply the e^{AT} encoding to |u(0)> and post-select.

    The construction is zero-error, so the output equals the normalized
    reference exactly and the success probability is exactly
    (‖u(T)‖/(e^{αT}‖u0‖))².
    """
    _check_problem(p, o)
    if not p.is_homogeneous:
        raise ValueError("homogeneous solver got a nonzero b")
    be = be_exp_eigen(o, p.horizon)
    reference = solve_reference(p)
    rep = lcs_combine_and_measure(p.u0, None, be, None, reference,
                                  TOL.exact_solver)
    rep.extras["alpha_shift"] = o.alpha_shift
    return rep


def solve_eigen_inhomogeneous(p: OdeProblem, o: EigenOracleSet) -> SolveReport:
    """LCS combination of the e^{AT} and Duhamel encodings (constant b)."""
    _check_problem(p, o)
    if p.inhomogeneous is None or isinstance(p.inhomogeneous, SampledSource):
        raise ValueError("needs a constant inhomogeneous term")
    be0 = be_exp_eigen(o, p.horizon)
    be1 = be_duhamel_eigen(o, p.horizon)
    reference = solve_reference(p)
    rep = lcs_combine_and_measure(p.u0, p.inhomogeneous, be0, be1, reference,
                                  TOL.exact_solver)
    rep.extras["alpha_shift"] = o.alpha_shift
    return rep


@dataclass
class RiemannPlan:
    """Left-Riemann discretization of the Duhamel integral."""

    nodes: int
    times: np.ndarray
    norms: np.ndarray
    avg_square_norm: float

    @property
    def avg_norm(self) -> float:
        return math.sqrt(self.avg_square_norm)


def riemann_plan(b, T: float, M: int) -> RiemannPlan:
    """Sample b at the M left-Riemann nodes kT/M and record the norms."""
    if M < 1:
        raise ValueError("need at least one node")
    src = b if isinstance(b, SampledSource) else SampledSource(b)
    times = np.arange(M) * (T / M)
    norms = np.array([float(np.linalg.norm(src(t))) for t in times])
    return RiemannPlan(M, times, norms, float(np.mean(norms ** 2)))


def _sup_drive_term(p: OdeProblem, o: EigenOracleSet,
                    samples: int = 4097) -> float:
    """sup over [0,T] of ‖A‖·‖b(t)‖ + ‖db/dt‖ on a dense grid."""
    src = p.inhomogeneous
    if not isinstance(src, SampledSource):
        raise ValueError("quadrature bounds need a sampled source")
    if src.derivative is None and src.derivative_sup is None:
        raise ValueError("quadrature bounds need a derivative or a bound on it")
    norm_a = float(np.max(np.abs(o.eigenvalues)))
    ts = np.linspace(0.0, p.horizon, samples)
    best = 0.0
    for t in ts:
        term = norm_a * float(np.linalg.norm(src(t)))
        if src.derivative is not None:
            term += float(np.linalg.norm(as_vector(src.derivative(t))))
        else:
            term += float(src.derivative_sup)
        best = max(best, term)
    return best


def _alpha_tilde(o: EigenOracleSet) -> float:
    return max(0.0, float(np.max(o.eigenvalues.real)))


def quadrature_error_bound(p: OdeProblem, o: EigenOracleSet, M: int) -> float:
    """Riemann-sum error bound T²e^{α̃T}/(2M) · sup(‖A‖‖b‖ + ‖db/dt‖)."""
    if M < 1:
        raise ValueError("need at least one node")
    T = p.horizon
    sup = _sup_drive_term(p, o)
    return (T ** 2) * math.exp(_alpha_tilde(o) * T) / (2.0 * M) * sup


def quadrature_nodes_for(p: OdeProblem, o: EigenOracleSet,
                         eps_prime: float) -> int:
    """Node count M making the Riemann error bound at most eps_prime."""
    if eps_prime <= 0:
        raise ValueError("eps_prime must be positive")
    T = p.horizon
    sup = _sup_drive_term(p, o)
    return max(1, math.ceil(
        (T ** 2) * math.exp(_alpha_tilde(o) * T) * sup / (2.0 * eps_prime)))


def _timedep_ledger(M: int) -> QueryLedger:
    # one controlled run of the proof circuit: homogeneous branch (10 oracle
    # queries + 2 U), b branch (8 factor queries + 2 U, no O_T), the two b
    # input oracles, and the Hadamard collapse of the time register
    n_t = max(1, math.ceil(math.log2(M))) if M > 1 else 1
    return QueryLedger({
        O_T: 2, O_LAMBDA_R: 4, O_LAMBDA_I: 4, O_EXP: 4, O_PROD: 4,
        U_EIG: 4, O_BT: 1, O_BNORM: 1, GATES: n_t + 2,
    })


def solve_eigen_timedep(p: OdeProblem, o: EigenOracleSet, eps: float,
                        M: int | None = None) -> SolveReport:
    """Riemann-sum LCS solve for a time-dependent inhomogeneous term.

    Simulates the full circuit at amplitude level: a control rotation with
    weights e^{α̃T}‖u0‖ versus e^{α̃T}·T‖b‖_avg, a ‖b‖-weighted superposition
    over the M nodes, per-node application of the e^{A(T-kT/M)} diagonal
    factors, a Hadamard collapse of the time register and the final control
    Hadamard.  The success probability is exactly
    (‖ũ(T)‖ / (e^{α̃T} sqrt(2(‖u0‖² + T²‖b‖²_avg))))².

    M defaults to the quadrature bound's choice for ε′ = ε‖u(T)‖/2 and is
    capped at MAX_RIEMANN_NODES (the required M is reported on failure).
    """
    _check_problem(p, o)
    if o.alpha_shift < 0:
        raise ValueError("the time-dependent path needs the nonnegative-shift "
                         "variant (α̃ ≥ 0)")
    if p.inhomogeneous is None or not isinstance(p.inhomogeneous, SampledSource):
        # a zero b reduces to the homogeneous solver exactly
        if p.is_homogeneous:
            return solve_eigen_homogeneous(p, o)
        raise ValueError("needs a sampled (callable) inhomogeneous term")

    T = p.horizon
    lam = o.eigenvalues
    u = o.eigen.basis
    alpha_t = o.alpha_shift
    reference = solve_reference(p)
    norm_uT = float(np.linalg.norm(reference))
    if norm_uT <= TOL.zero:
        raise ValueError("u(T) vanishes; nothing to post-select")

    bound = None
    if M is None:
        eps_prime = eps * norm_uT / 2.0
        M = quadrature_nodes_for(p, o, eps_prime)
        if M > MAX_RIEMANN_NODES:
            raise ValueError(
                f"required Riemann node count M = {M} exceeds the configured "
                f"cap {MAX_RIEMANN_NODES}")
    try:
        bound = quadrature_error_bound(p, o, M)
    except ValueError:
        pass  # no derivative data when M was supplied explicitly

    plan = riemann_plan(p.inhomogeneous, T, M)
    src = p.inhomogeneous
    # per-node diagonal factors in the eigenbasis, summed with weight T/M
    b_nodes = np.column_stack([as_vector(src(t)) for t in plan.times])
    b_hat = u.conj().T @ b_nodes
    phases = np.exp(np.outer(lam, T - plan.times))
    integral = u @ ((phases * b_hat).sum(axis=1)) * (T / M)
    hom = u @ (np.exp(lam * T) * (u.conj().T @ p.u0))
    u_tilde = hom + integral

    nu = float(np.linalg.norm(p.u0))
    denom = math.exp(alpha_t * T) * math.sqrt(
        2.0 * (nu ** 2 + T ** 2 * plan.avg_square_norm))
    prob = (float(np.linalg.norm(u_tilde)) / denom) ** 2
    if prob <= 1e-28:
        raise ValueError("degenerate instance: success probability is zero")
    out = u_tilde / np.linalg.norm(u_tilde)
    err = global_phase_distance(out, reference / norm_uT)
    claimed = eps
    if bound is not None:
        claimed = max(eps, 2.0 * bound / norm_uT + TOL.exact_solver)
    rep_no, rep_aa = repeat_estimates(prob)
    report = SolveReport(out, prob, rep_no, rep_aa,
                         _timedep_ledger(M).charge(O_U, 1), err,
                         min(1.0, claimed))
    report.extras.update({
        "nodes": M, "avg_square_norm": plan.avg_square_norm,
        "alpha_tilde": alpha_t, "quadrature_bound": bound,
    })
    return report
