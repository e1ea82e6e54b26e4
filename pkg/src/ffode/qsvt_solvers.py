"""Quadratically fast-forwarded solvers and the shared LCS combiner.

Two solver families: bounded negative-definite Hermitian coefficients
(spectrum in [-1, -δ]) and negative semi-definite A = -H² given through a
block-encoding of H.  Both produce block-encodings of e^{AT} and of the
Duhamel integral ∫₀ᵀ e^{A(T-s)} ds, then run an amplitude-level simulation of
the linear-combination-of-states circuit with exact success probabilities and
per-run query ledgers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import AA_CONSTANT, TOL
from .block_encoding import (
    GATES, O_B, O_U, BlockEncoding, QueryLedger, StatePreparationPair,
    exact_dilation, identity_encoding, lcu_combine, invert, multiply,
    polynomial_transform, ry,
)
from .linalg import as_vector, global_phase_distance, matrix_exponential, \
    spectral_norm
from .poly_approx import approx_exp_shifted, approx_gaussian, \
    approx_gaussian_integral
from .reference import OdeProblem, exp_integral, solve_reference


def repeat_estimates(success_probability: float) -> tuple[int, int]:
    """(without, with) amplitude amplification: ceil(1/p) and ceil(c/sqrt(p))."""
    p = success_probability
    return math.ceil(1.0 / p), math.ceil(AA_CONSTANT / math.sqrt(p))


@dataclass
class SolveReport:
    """Outcome of one simulated solver run.

    The ledger counts oracle uses of a *single* circuit execution; multiply by
    a repeat estimate for end-to-end counts.  ``error_vs_reference`` is the
    global-phase-quotiented 2-norm distance to the normalized reference.
    """

    output_state: np.ndarray
    success_probability: float
    repeats_no_aa: int
    repeats_aa: int
    ledger: QueryLedger
    error_vs_reference: float
    claimed_eps: float
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0.0 < self.success_probability <= 1.0 + 1e-12):
            raise ValueError(
                f"success probability {self.success_probability} out of range")
        if self.error_vs_reference > self.claimed_eps + TOL.verify_slack:
            raise ValueError(
                f"solver error {self.error_vs_reference:.3e} exceeds its claim "
                f"{self.claimed_eps:.3e}")


def _check_negdef(a: np.ndarray, delta: float) -> np.ndarray:
    if spectral_norm(a - a.conj().T) > 1e-10:
        raise ValueError("coefficient must be Hermitian")
    w = np.linalg.eigvalsh(a)
    if w[-1] > -delta + 1e-12 or w[0] < -1.0 - 1e-12:
        raise ValueError(
            f"spectrum {w} is not inside [-1, -δ] with δ = {delta}")
    return w


def duhamel_integral_negdef(a: np.ndarray, T: float) -> np.ndarray:
    """Exact ∫₀ᵀ e^{A(T-s)} ds for Hermitian A, via eigendecomposition."""
    w, v = np.linalg.eigh(a)
    kern = np.array([exp_integral(float(wj), T) for wj in w])
    return (v * kern) @ v.conj().T


def be_exp_negdef(u_a: BlockEncoding, T: float, delta: float,
                  eps: float) -> BlockEncoding:
    """(3, n_A+4, ε)-block-encoding of e^{AT} for negative-definite A.

    Pipeline: Hadamard-pair LCU turns the (1, n_A, 0)-encoding of A into a
    (1, n_A+1, 0)-encoding of (I+A)/2; uniform singular-value amplification
    (simulated exactly, charged at ceil((1/δ)·ln(1/ε₁)) uses) lifts it to a
    (1, n_A+2, ε₁)-encoding of I+A; a degree-d Chebyshev approximant of
    e^{-T(1-x)}/3 is then applied by QSVT.  Error split: the approximant gets
    ε/2 and the amplification ε₁ = (ε/(24d))² so the QSVT term 12d·sqrt(ε₁)
    also stays below ε/2.
    """
    if abs(u_a.alpha - 1.0) > 1e-12:
        raise ValueError("the negative-definite pipeline expects alpha = 1")
    if u_a.target is None:
        raise ValueError("needs an encoding with an attached target")
    if not (0 < eps < 1):
        raise ValueError("eps must lie in (0, 1)")
    a = u_a.target
    _check_negdef(a, delta)
    n = u_a.system_dim
    n_a = u_a.ancilla_qubits

    # (1, n_A+1, 0)-encoding of (I+A)/2 from (H ⊗ I) c-U (H ⊗ I)
    dim = u_a.unitary.shape[0]
    c_u = np.block([
        [np.eye(dim), np.zeros((dim, dim))],
        [np.zeros((dim, dim)), u_a.unitary],
    ])
    had = np.kron(np.array([[1, 1], [1, -1]]) / math.sqrt(2.0), np.eye(dim))
    v2 = BlockEncoding(had @ c_u @ had, n, 1.0, 0.0, n_a + 1,
                       u_a.ledger.charge(GATES, 2),
                       (np.eye(n) + a) / 2.0)

    # uniform amplification to (1, n_A+2, ε₁)-encoding of I+A; the block is
    # amplified exactly, the ledger charges the advertised query cost
    poly = approx_exp_shifted(T, eps / 2.0)
    d = poly.degree()
    eps1 = (eps / (24.0 * max(d, 1))) ** 2
    q_amp = max(1, math.ceil((1.0 / delta) * math.log(1.0 / eps1)))
    amplified = exact_dilation(2.0 * v2.encoded, 1.0,
                               ledger=v2.ledger.scaled(q_amp))
    amplified = amplified.padded(n_a + 1).reattached(np.eye(n) + a, eps1)

    out = polynomial_transform(amplified, poly.scaled(1.0 / 3.0))
    return out.reattached(matrix_exponential(a, T), eps, alpha=3.0)


def be_duhamel_negdef(u_a: BlockEncoding, T: float, delta: float,
                      eps: float) -> BlockEncoding:
    """(16/(3δ), 2n_A+6, ε)-block-encoding of ∫₀ᵀ e^{A(T-s)} ds.

    Combines e^{AT} and -I through the (4,1,0)-state-preparation pair of
    (3,-1) realized by R_y(±π/3), then multiplies by the inverse encoding.
    The error budget puts ε/2 on each factor of the product rule
    4ε″ + 16ε′/(9δ), i.e. ε′ = 9δε/32 and ε″ = ε/8.
    """
    if not (0 < eps < 1):
        raise ValueError("eps must lie in (0, 1)")
    eps_exp = 9.0 * delta * eps / 32.0
    eps_inv = eps / 8.0
    n = u_a.system_dim
    a = u_a.target

    u_exp = be_exp_negdef(u_a, T, delta, eps_exp)
    # view the (3,·,ε′)-encoding of e^{AT} as a (1,·,ε′/3)-encoding of e^{AT}/3
    u_exp_unit = u_exp.reattached(u_exp.target / 3.0, eps_exp / 3.0, alpha=1.0)
    ident = identity_encoding(n, u_exp.ancilla_qubits)
    pair = StatePreparationPair(ry(math.pi / 3.0), ry(-math.pi / 3.0), 4.0)
    shifted = lcu_combine(pair, [u_exp_unit, ident])

    u_inv = invert(u_a, delta, eps_inv)
    prod = multiply(shifted, u_inv)
    return prod.reattached(duhamel_integral_negdef(a, T), eps)


def _pad_to_common(be0: BlockEncoding, be1: BlockEncoding):
    anc = max(be0.ancilla_qubits, be1.ancilla_qubits)
    return be0.padded(anc - be0.ancilla_qubits), be1.padded(anc - be1.ancilla_qubits)


def lcs_combine_and_measure(u0, b, be0: BlockEncoding,
                            be1: BlockEncoding | None,
                            reference: np.ndarray, eps: float) -> SolveReport:
    """Amplitude-level simulation of the linear-combination-of-states circuit.

    A control qubit is rotated to weights (α₀‖u0‖, α₁‖b‖), the controlled
    state preparations and controlled encodings are applied, a final Hadamard
    recombines the branches, and control+ancilla are post-selected on zero.
    The reported angle is θ = -2·arcsin(α₁‖b‖/sqrt(α₀²‖u0‖² + α₁²‖b‖²)); the
    simulation realizes the branch weights directly.  Returns the exact
    post-selected state and success probability.

    With b absent (or zero) the control qubit degenerates to the
    homogeneous post-selection with probability (‖ũ(T)‖/(α₀‖u0‖))².
    """
    u0 = as_vector(u0)
    nu = float(np.linalg.norm(u0))
    if nu <= 0:
        raise ValueError("u0 must be nonzero")
    nb = 0.0 if b is None else float(np.linalg.norm(as_vector(b)))
    n = be0.system_dim

    def zero_anc_state(be, vec):
        full = np.zeros(be.unitary.shape[0], dtype=complex)
        full[:n] = vec / np.linalg.norm(vec)
        return be.unitary @ full

    if nb == 0.0:
        # degenerate θ = 0 branch: the control stays |0> and only U₀ acts
        out_full = zero_anc_state(be0, u0)
        success = out_full[:n]
        prob = float(np.linalg.norm(success) ** 2)
        ledger = be0.ledger.charge(O_U, 1)
        alpha1 = 0.0
        theta = 0.0
        weight = be0.alpha * nu
    else:
        if be1 is None:
            raise ValueError("an inhomogeneous run needs the integral encoding")
        be0, be1 = _pad_to_common(be0, be1)
        w0 = be0.alpha * nu
        w1 = be1.alpha * nb
        weight = math.hypot(w0, w1)
        theta = -2.0 * math.asin(w1 / weight)
        v0 = zero_anc_state(be0, u0)[:n]
        v1 = zero_anc_state(be1, as_vector(b))[:n]
        success = (w0 * v0 + w1 * v1) / (math.sqrt(2.0) * weight)
        prob = float(np.linalg.norm(success) ** 2)
        ledger = (be0.ledger + be1.ledger).charge(O_U, 1).charge(O_B, 1) \
            .charge(GATES, 4)
        alpha1 = be1.alpha

    if prob <= 1e-28:
        raise ValueError("degenerate instance: success probability is zero "
                         "(u(T) vanishes within tolerance)")
    out = success / np.linalg.norm(success)
    err = global_phase_distance(out, reference / np.linalg.norm(reference))
    rep_no, rep_aa = repeat_estimates(prob)
    ancillas = be0.ancilla_qubits + (0 if nb == 0.0 else 1)  # + control qubit
    return SolveReport(out, prob, rep_no, rep_aa, ledger, err, eps, extras={
        "alpha0": be0.alpha, "alpha1": alpha1, "theta": theta,
        "branch_weight": weight, "ancilla_qubits": ancillas,
    })


def _lcs_tolerances(eps: float, norm_uT: float, nu: float,
                    nb: float) -> tuple[float, float]:
    """Component error budgets ε₀ = ‖u(T)‖ε/(4‖u0‖), ε₁ = ‖u(T)‖ε/(4‖b‖)."""
    eps0 = norm_uT * eps / (4.0 * nu)
    eps1 = norm_uT * eps / (4.0 * nb) if nb > 0 else 0.0
    return eps0, eps1


def solve_negdef(p: OdeProblem, delta: float, eps: float) -> SolveReport:
    """End-to-end fast-forwarded solve for negative-definite Hermitian A.

    Builds the e^{AT} and Duhamel encodings at the LCS error budgets, then
    simulates the combination circuit.  The per-run ledger follows the
    sqrt(T)/δ · polylog shape of the underlying constructions.
    """
    a = p.matrix
    _check_negdef(a, delta)
    if p.inhomogeneous is not None and not isinstance(p.inhomogeneous, np.ndarray):
        raise ValueError("the negative-definite solver needs a constant b")
    reference = solve_reference(p)
    norm_uT = float(np.linalg.norm(reference))
    if norm_uT <= TOL.zero:
        raise ValueError("u(T) vanishes; nothing to post-select")
    nu = float(np.linalg.norm(p.u0))
    nb = 0.0 if p.is_homogeneous else float(np.linalg.norm(p.inhomogeneous))
    u_a = exact_dilation(a, 1.0)

    if nb == 0.0:
        eps0 = min(norm_uT * eps / (2.0 * nu), 0.24)
        be0 = be_exp_negdef(u_a, p.horizon, delta, eps0)
        return lcs_combine_and_measure(p.u0, None, be0, None, reference, eps)

    eps0, eps1 = _lcs_tolerances(eps, norm_uT, nu, nb)
    be0 = be_exp_negdef(u_a, p.horizon, delta, min(eps0, 0.24))
    be1 = be_duhamel_negdef(u_a, p.horizon, delta, min(eps1, 0.49))
    return lcs_combine_and_measure(p.u0, p.inhomogeneous, be0, be1,
                                   reference, eps)


def solve_sqrt_access(p: OdeProblem, u_h: BlockEncoding,
                      eps: float) -> SolveReport:
    """Fast-forwarded solve for A = -H² through a block-encoding of H.

    e^{AT} comes from the even gaussian approximant of e^{-βx²} with
    β = T·α_H² (normalization 3); the Duhamel integral from the integrated
    gaussian (normalization 3T).  Constant b only.
    """
    if u_h.target is None:
        raise ValueError("needs an encoding of H with an attached target")
    h = u_h.target
    if spectral_norm(h - h.conj().T) > 1e-10:
        raise ValueError("H must be Hermitian")
    a = -(h @ h)
    if spectral_norm(a - p.matrix) > 1e-9:
        raise ValueError("problem coefficient does not equal -H²")
    if p.inhomogeneous is not None and not isinstance(p.inhomogeneous, np.ndarray):
        raise ValueError("the square-root solver needs a constant b")

    T = p.horizon
    beta = T * u_h.alpha ** 2
    reference = solve_reference(p)
    norm_uT = float(np.linalg.norm(reference))
    if norm_uT <= TOL.zero:
        raise ValueError("u(T) vanishes; nothing to post-select")
    nu = float(np.linalg.norm(p.u0))
    nb = 0.0 if p.is_homogeneous else float(np.linalg.norm(p.inhomogeneous))

    hw, hv = np.linalg.eigh(h)
    exp_target = (hv * np.exp(-T * hw ** 2)) @ hv.conj().T
    duh_target = (hv * np.array([exp_integral(-float(x) ** 2, T) for x in hw])
                  ) @ hv.conj().T

    if nb == 0.0:
        eps0 = min(norm_uT * eps / (2.0 * nu), 0.24)
        g = approx_gaussian(beta, eps0)
        be0 = polynomial_transform(u_h, g.scaled(1.0 / 3.0))
        be0 = be0.reattached(exp_target, eps0, alpha=3.0)
        rep = lcs_combine_and_measure(p.u0, None, be0, None, reference, eps)
    else:
        eps0, eps1 = _lcs_tolerances(eps, norm_uT, nu, nb)
        eps0 = min(eps0, 0.24)
        eps1 = min(eps1, 0.24)
        g = approx_gaussian(beta, eps0)
        be0 = polynomial_transform(u_h, g.scaled(1.0 / 3.0))
        be0 = be0.reattached(exp_target, eps0, alpha=3.0)
        q = approx_gaussian_integral(beta, eps1 / T)
        be1 = polynomial_transform(u_h, q.scaled(1.0 / 3.0))
        be1 = be1.reattached(duh_target, eps1, alpha=3.0 * T)
        rep = lcs_combine_and_measure(p.u0, p.inhomogeneous, be0, be1,
                                      reference, eps)
    rep.extras["beta"] = beta
    rep.extras["gaussian_degree"] = g.degree()
    return rep
