"""Dense complex linear algebra shared by every other module.

Norms, distances, matrix exponentials, non-normality and the small
renormalization/fidelity perturbation lemmas, plus the ``EigenSystem``
container for unitarily diagonalizable matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .config import TOL


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(v) -> np.ndarray:
    w = np.asarray(v, dtype=complex).ravel()
    if w.size == 0:
        raise ValueError("empty vector")
    return w


def as_state(v, tol: float = 1e-9) -> np.ndarray:
    """Validate that ``v`` is unit norm and return it as a flat array."""
    w = as_vector(v)
    nrm = np.linalg.norm(w)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"expected a unit-norm vector, got norm {nrm}")
    return w


def spectral_norm(m) -> float:
    """Largest singular value (the matrix 2-norm)."""
    return float(np.linalg.norm(as_matrix(m), 2))


def schatten1_norm(m) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(as_matrix(m), compute_uv=False).sum())


def schatten1_distance(p, q) -> float:
    """Trace distance (1/2)·‖P - Q‖₁ between two same-shape matrices."""
    pm, qm = as_matrix(p), as_matrix(q)
    if pm.shape != qm.shape:
        raise ValueError(f"shape mismatch: {pm.shape} vs {qm.shape}")
    return 0.5 * schatten1_norm(pm - qm)


def pure_state_trace_distance(psi, phi) -> tuple[float, float]:
    """Trace distance between two pure states and its 2-norm upper bound.

    Returns ``(sqrt(1 - |<psi|phi>|^2), ‖psi - phi‖)``; the first entry never
    exceeds the second.  Both inputs must be unit norm.
    """
    a = as_state(psi)
    b = as_state(phi)
    overlap = abs(np.vdot(a, b))
    dist = float(np.sqrt(max(0.0, 1.0 - min(overlap, 1.0) ** 2)))
    bound = float(np.linalg.norm(a - b))
    return dist, bound


def global_phase_distance(psi, phi) -> float:
    """2-norm distance between unit vectors minimized over a global phase."""
    a = as_state(psi)
    b = as_state(phi)
    ov = np.vdot(a, b)
    if abs(ov) < 1e-14:
        return float(np.sqrt(2.0))
    # the minimizing phase aligns b with a; the difference is formed directly
    # so exactly-equal states measure ~1e-16 instead of the sqrt(eps) floor
    return float(np.linalg.norm(a - (np.conj(ov) / abs(ov)) * b))


def non_normality(a) -> float:
    """μ(A) = ‖A†A - AA†‖^(1/2); zero exactly when A is normal."""
    m = as_square(a)
    comm = m.conj().T @ m - m @ m.conj().T
    return float(np.sqrt(spectral_norm(comm)))


def logarithmic_norm(a) -> float:
    """Largest eigenvalue of the Hermitian part (A + A†)/2."""
    m = as_square(a)
    herm = (m + m.conj().T) / 2.0
    return float(np.linalg.eigvalsh(herm)[-1])


def matrix_exponential(a, t: float = 1.0) -> np.ndarray:
    """e^{At}.

    Normal matrices (detected through the off-diagonal weight of the complex
    Schur form, scaled by ‖A‖) go through the eigendecomposition path;
    everything else falls back to scipy's scaling-and-squaring Padé.
    """
    m = as_square(a)
    norm = spectral_norm(m)
    tmat, q = sla.schur(m, output="complex")
    off = tmat - np.diag(np.diag(tmat))
    if spectral_norm(off) <= TOL.normality * max(1.0, norm):
        w = np.diag(tmat)
        return (q * np.exp(w * t)) @ q.conj().T
    return sla.expm(m * t)


def renormalization_error_bounds(a, a_tilde) -> tuple[float, float]:
    """Bounds relating an unnormalized perturbation to the normalized states.

    For nonzero vectors with ``eps = ‖a - ã‖`` returns the pair
    ``(‖a‖ - eps, 2 eps / ‖a‖)``: a lower bound on ``‖ã‖`` and an upper bound
    on ``‖a/‖a‖ - ã/‖ã‖‖``.  Both are re-verified numerically before
    returning.
    """
    av = as_vector(a)
    tv = as_vector(a_tilde)
    na, nt = np.linalg.norm(av), np.linalg.norm(tv)
    if na <= 0 or nt <= 0:
        raise ValueError("renormalization bounds need two nonzero vectors")
    eps = float(np.linalg.norm(av - tv))
    lower = float(na - eps)
    bound = float(2.0 * eps / na)
    assert nt >= lower - 1e-12
    assert np.linalg.norm(av / na - tv / nt) <= bound + 1e-12
    return lower, bound


def fidelity_perturbation_bound(psi, phi, psi_tilde, phi_tilde) -> bool:
    """Check |<ψ̃|φ̃>| ≤ |<ψ|φ>| + ‖ψ̃-ψ‖ + ‖φ̃-φ‖ for four unit vectors."""
    a, b = as_state(psi), as_state(phi)
    at, bt = as_state(psi_tilde), as_state(phi_tilde)
    lhs = abs(np.vdot(at, bt))
    rhs = abs(np.vdot(a, b)) + np.linalg.norm(at - a) + np.linalg.norm(bt - b)
    return bool(lhs <= rhs + 1e-12)


@dataclass
class EigenSystem:
    """Unitary eigenbasis plus eigenvalue list: A = U Λ U†."""

    basis: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self):
        self.basis = as_square(self.basis)
        self.eigenvalues = as_vector(self.eigenvalues)
        n = self.basis.shape[0]
        if self.eigenvalues.size != n:
            raise ValueError("eigenvalue count does not match basis dimension")
        gram = self.basis.conj().T @ self.basis - np.eye(n)
        err = spectral_norm(gram)
        if err > TOL.unitarity:
            raise ValueError(f"eigenbasis is not unitary: ‖U†U-I‖ = {err:.3e}")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Reconstruct the dense matrix U Λ U†."""
        return (self.basis * self.eigenvalues) @ self.basis.conj().T

    def apply_function(self, f) -> np.ndarray:
        """U f(Λ) U† for a scalar function applied to the eigenvalues."""
        return (self.basis * f(self.eigenvalues)) @ self.basis.conj().T

    @classmethod
    def from_matrix(cls, a) -> "EigenSystem":
        """Diagonalize a normal matrix; raises for non-normal input."""
        m = as_square(a)
        norm = spectral_norm(m)
        tmat, q = sla.schur(m, output="complex")
        off = tmat - np.diag(np.diag(tmat))
        if spectral_norm(off) > TOL.normality * max(1.0, norm):
            raise ValueError("matrix is not normal; no unitary eigenbasis exists")
        es = cls(q, np.diag(tmat))
        recon = spectral_norm(es.matrix - m)
        if recon > TOL.reconstruction:
            raise ValueError(f"eigendecomposition residual too large: {recon:.3e}")
        return es
