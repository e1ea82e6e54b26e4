"""Block-encodings as explicit unitaries with compositional query accounting.

A block-encoding here is a concrete unitary matrix whose top-left
``system_dim`` × ``system_dim`` block, scaled by the normalization ``alpha``,
approximates a target matrix to within ``epsilon_claim``.  The calculus
(linear combination, product, inverse, bounded polynomial) builds new
encodings out of old ones while a :class:`QueryLedger` tracks how many times
each underlying oracle would be queried by the corresponding circuit.

Conventions
-----------
* Ancilla registers are prepended (most significant), so the encoded block
  is always the leading block of the unitary.
* The physical unitary always has dimension ``2**ancilla_qubits * system_dim``;
  constructors that claim more ancillas than the simulation needs pad with
  identity factors, which leaves the encoded block untouched.
* Polynomial eigenvalue transforms are simulated by exact spectral calculus
  while the ledger charges the query cost of the corresponding circuit.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg as sla

from .config import INVERSE_QUERY_CONSTANT, TOL
from .linalg import as_square, spectral_norm

# Canonical ledger keys.
U_A = "U_A"
O_U = "O_u"
O_B = "O_b"
O_T = "O_T"
O_LAMBDA = "O_lambda"
O_LAMBDA_R = "O_lambda_r"
O_LAMBDA_I = "O_lambda_i"
O_EXP = "O_exp"
O_F = "O_f"
O_G = "O_g"
O_PROD = "O_prod"
O_BT = "O_bt"
O_BNORM = "O_bnorm"
U_EIG = "U_eig"
PREP_PAIR = "prep_pair"
GATES = "one_qubit_gates"

#: fixed column order used by the CLI when flattening ledgers
LEDGER_KEYS = (
    U_A, O_U, O_B, O_T, O_LAMBDA, O_LAMBDA_R, O_LAMBDA_I, O_EXP,
    O_F, O_G, O_PROD, O_BT, O_BNORM, U_EIG, PREP_PAIR, GATES,
)


class QueryLedger:
    """Additive map from oracle name to nonnegative use count.

    Instances are treated as immutable: every operation returns a new ledger,
    so counts compose additively and never decrease.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts=None):
        c = Counter()
        if counts:
            for name, n in dict(counts).items():
                n = int(n)
                if n < 0:
                    raise ValueError("ledger counts must be nonnegative")
                if n:
                    c[name] = n
        self._counts = c

    def charge(self, name: str, n: int = 1) -> "QueryLedger":
        out = Counter(self._counts)
        out[name] += int(n)
        return QueryLedger(out)

    def merged(self, *others: "QueryLedger") -> "QueryLedger":
        out = Counter(self._counts)
        for o in others:
            out.update(o._counts)
        return QueryLedger(out)

    def scaled(self, k: int) -> "QueryLedger":
        if k < 0:
            raise ValueError("ledger scale factor must be nonnegative")
        return QueryLedger({name: n * int(k) for name, n in self._counts.items()})

    def total(self, include_gates: bool = False) -> int:
        return sum(n for name, n in self._counts.items()
                   if include_gates or name != GATES)

    @property
    def counts(self) -> dict:
        return dict(sorted(self._counts.items()))

    def __getitem__(self, name: str) -> int:
        return self._counts.get(name, 0)

    def __add__(self, other: "QueryLedger") -> "QueryLedger":
        return self.merged(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, QueryLedger) and self._counts == other._counts

    def __repr__(self) -> str:
        return f"QueryLedger({self.counts})"


@dataclass
class BlockEncoding:
    """An (alpha, ancilla_qubits, epsilon_claim)-block-encoding.

    ``target`` is the analytic matrix the encoding claims to represent; when
    present it is re-verified at construction time.
    """

    unitary: np.ndarray
    system_dim: int
    alpha: float
    epsilon_claim: float
    ancilla_qubits: int
    ledger: QueryLedger = field(default_factory=QueryLedger)
    target: np.ndarray | None = None

    def __post_init__(self):
        self.unitary = as_square(self.unitary)
        dim = self.unitary.shape[0]
        expected = (2 ** self.ancilla_qubits) * self.system_dim
        if dim != expected:
            raise ValueError(
                f"unitary dim {dim} != 2^{self.ancilla_qubits} * {self.system_dim}")
        if self.alpha <= 0:
            raise ValueError("normalization alpha must be positive")
        if self.epsilon_claim < 0:
            raise ValueError("claimed error must be nonnegative")
        gram = self.unitary.conj().T @ self.unitary - np.eye(dim)
        err = spectral_norm(gram)
        if err > TOL.unitarity:
            raise ValueError(f"encoding matrix is not unitary: ‖U†U-I‖ = {err:.3e}")
        if self.target is not None:
            self.target = as_square(self.target)
            verify_block_encoding(self, self.target)

    @property
    def block(self) -> np.ndarray:
        """The raw top-left block (target/alpha up to the claimed error)."""
        n = self.system_dim
        return self.unitary[:n, :n]

    @property
    def encoded(self) -> np.ndarray:
        """alpha times the top-left block."""
        return self.alpha * self.block

    def reattached(self, target, epsilon_claim: float,
                   alpha: float | None = None) -> "BlockEncoding":
        """Same circuit, new claim (e.g. reinterpreting a scaled encoding)."""
        return replace(self, target=np.asarray(target, dtype=complex),
                       epsilon_claim=float(epsilon_claim),
                       alpha=self.alpha if alpha is None else float(alpha))

    def padded(self, extra_ancillas: int) -> "BlockEncoding":
        """Prepend identity ancillas; the encoded block is unchanged."""
        if extra_ancillas < 0:
            raise ValueError("cannot remove ancillas")
        if extra_ancillas == 0:
            return self
        u = np.kron(np.eye(2 ** extra_ancillas), self.unitary)
        return replace(self, unitary=u,
                       ancilla_qubits=self.ancilla_qubits + extra_ancillas)


def verify_block_encoding(be: BlockEncoding, target) -> float:
    """Measured spectral-norm error ‖target - alpha * block‖.

    Raises if the measurement exceeds the claimed error (plus a rounding
    slack proportional to alpha).
    """
    tgt = as_square(target)
    if tgt.shape != (be.system_dim, be.system_dim):
        raise ValueError(
            f"target shape {tgt.shape} does not match system dim {be.system_dim}")
    err = spectral_norm(tgt - be.alpha * be.block)
    slack = TOL.verify_slack * max(1.0, be.alpha)
    if err > be.epsilon_claim + slack:
        raise ValueError(
            f"block-encoding violates its claim: measured {err:.3e} > "
            f"claimed {be.epsilon_claim:.3e}")
    return float(err)


def _unitary_completion(first_column: np.ndarray) -> np.ndarray:
    """Deterministic unitary whose first column is the given unit vector."""
    psi = np.asarray(first_column, dtype=complex).ravel()
    d = psi.size
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError("completion needs a unit-norm first column")
    psi = psi / nrm
    ph = psi[0] / abs(psi[0]) if abs(psi[0]) > 1e-14 else 1.0
    v = psi.copy()
    v[0] += ph
    h = np.eye(d) - 2.0 * np.outer(v, v.conj()) / np.vdot(v, v).real
    return -ph * h


def ry(theta: float) -> np.ndarray:
    """Single-qubit y-rotation, R_y(θ)|0> = (cos(θ/2), sin(θ/2))."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def identity_encoding(system_dim: int, ancilla_qubits: int = 0) -> BlockEncoding:
    """A (1, ancilla_qubits, 0)-encoding of the identity with an empty ledger."""
    dim = (2 ** ancilla_qubits) * system_dim
    return BlockEncoding(np.eye(dim, dtype=complex), system_dim, 1.0, 0.0,
                         ancilla_qubits, QueryLedger(),
                         np.eye(system_dim, dtype=complex))


def exact_dilation(a, alpha: float, *, oracle: str = U_A,
                   ledger: QueryLedger | None = None) -> BlockEncoding:
    """One-ancilla (alpha, 1, 0)-block-encoding of ``a`` by unitary completion.

    Uses the standard dilation [[M, sqrt(I-MM†)], [sqrt(I-M†M), -M†]] with
    M = a/alpha, so it requires ‖a‖ ≤ alpha.  By default the ledger charges a
    single use of ``oracle`` (the dilation *is* the primitive oracle); pass an
    explicit ledger when re-dilating a derived matrix.
    """
    m = as_square(a)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    norm = spectral_norm(m)
    if norm > alpha * (1.0 + 1e-12):
        raise ValueError(f"cannot dilate: ‖a‖ = {norm:.6g} exceeds alpha = {alpha}")
    scaled = m / alpha
    w, s, vh = np.linalg.svd(scaled)
    # sqrt(1-s²) amplifies rounding near s = 1 (unitary inputs); snap it to 0
    # there so the complement blocks vanish exactly
    comp = np.clip(1.0 - s ** 2, 0.0, None)
    comp[comp < 1e-12] = 0.0
    sc = np.sqrt(comp)
    top_right = (w * sc) @ w.conj().T
    bottom_left = (vh.conj().T * sc) @ vh
    u = np.block([[scaled, top_right], [bottom_left, -scaled.conj().T]])
    if ledger is None:
        ledger = QueryLedger({oracle: 1})
    return BlockEncoding(u, m.shape[0], float(alpha), 0.0, 1, ledger, m)


@dataclass
class StatePreparationPair:
    """Unitaries (P_L, P_R) whose first columns encode LCU weights.

    With first columns c and d, the represented coefficient vector is
    ``y_j = beta * conj(c_j) * d_j`` and ‖y‖₁ ≤ beta.
    """

    left: np.ndarray
    right: np.ndarray
    beta: float

    def __post_init__(self):
        self.left = as_square(self.left)
        self.right = as_square(self.right)
        if self.left.shape != self.right.shape:
            raise ValueError("P_L and P_R must act on the same register")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        for name, u in (("P_L", self.left), ("P_R", self.right)):
            err = spectral_norm(u.conj().T @ u - np.eye(u.shape[0]))
            if err > TOL.unitarity:
                raise ValueError(f"{name} is not unitary ({err:.3e})")
        y = self.target_vector
        if np.abs(y).sum() > self.beta * (1.0 + 1e-10):
            raise ValueError("‖y‖₁ exceeds beta")

    @property
    def size(self) -> int:
        return self.left.shape[0]

    @property
    def target_vector(self) -> np.ndarray:
        c = self.left[:, 0]
        d = self.right[:, 0]
        return self.beta * c.conj() * d

    @classmethod
    def from_vector(cls, y) -> "StatePreparationPair":
        """Build a (‖y‖₁, k, 0)-pair for a length-2^k coefficient vector."""
        yv = np.asarray(y, dtype=complex).ravel()
        k = yv.size.bit_length() - 1
        if 2 ** k != yv.size:
            raise ValueError("coefficient vector length must be a power of two")
        beta = float(np.abs(yv).sum())
        if beta <= 0:
            raise ValueError("cannot prepare the zero vector")
        c = np.sqrt(np.abs(yv) / beta)
        d = np.zeros_like(yv)
        nz = np.abs(yv) > 0
        d[nz] = yv[nz] / (beta * c[nz])
        return cls(_unitary_completion(c), _unitary_completion(d), beta)


def lcu_combine(prep: StatePreparationPair,
                blocks: list[BlockEncoding]) -> BlockEncoding:
    """Linear combination Σ y_j A_j of identically-shaped block-encodings.

    All blocks must share system dimension, ancilla layout and normalization
    alpha; the result is an (alpha*beta, n_a+k, alpha*beta*max_eps)-encoding
    built as (P_L† ⊗ I) (Σ_j |j><j| ⊗ U_j) (P_R ⊗ I).  The ledger adds one
    use of every block and one of the preparation pair.
    """
    if len(blocks) != prep.size:
        raise ValueError(f"need {prep.size} blocks, got {len(blocks)}")
    first = blocks[0]
    for b in blocks[1:]:
        if b.system_dim != first.system_dim:
            raise ValueError("blocks disagree on system dimension")
        if b.ancilla_qubits != first.ancilla_qubits:
            raise ValueError("blocks disagree on ancilla layout")
        if abs(b.alpha - first.alpha) > 1e-12 * max(1.0, first.alpha):
            raise ValueError("LCU requires a common normalization alpha")
    k = prep.size.bit_length() - 1
    inner = first.unitary.shape[0]
    selector = sla.block_diag(*[b.unitary for b in blocks])
    u = (np.kron(prep.left.conj().T, np.eye(inner)) @ selector
         @ np.kron(prep.right, np.eye(inner)))
    y = prep.target_vector
    target = None
    if all(b.target is not None for b in blocks):
        target = sum(yj * b.target for yj, b in zip(y, blocks))
    alpha = first.alpha * prep.beta
    eps = alpha * max(b.epsilon_claim for b in blocks)
    ledger = QueryLedger().merged(*[b.ledger for b in blocks]).charge(PREP_PAIR, 1)
    return BlockEncoding(u, first.system_dim, alpha, eps,
                         first.ancilla_qubits + k, ledger, target)


def multiply(u_a: BlockEncoding, u_b: BlockEncoding) -> BlockEncoding:
    """(alpha*beta, n_a+n_b, alpha*eps_b + beta*eps_a)-encoding of A·B.

    Realized as the explicit matrix product of the two dilations with the
    ancilla registers of ``u_a`` kept most significant.
    """
    if u_a.system_dim != u_b.system_dim:
        raise ValueError("system dimensions do not match")
    n = u_a.system_dim
    da = 2 ** u_a.ancilla_qubits
    db = 2 ** u_b.ancilla_qubits
    # embed U_A on [anc_a, system] with identity on anc_b (middle register)
    ua4 = u_a.unitary.reshape(da, n, da, n)
    ua_emb = np.einsum("asbt,ef->aesbft", ua4, np.eye(db)).reshape(
        da * db * n, da * db * n)
    ub_emb = np.kron(np.eye(da), u_b.unitary)
    u = ua_emb @ ub_emb
    alpha = u_a.alpha * u_b.alpha
    eps = u_a.alpha * u_b.epsilon_claim + u_b.alpha * u_a.epsilon_claim
    target = None
    if u_a.target is not None and u_b.target is not None:
        target = u_a.target @ u_b.target
    return BlockEncoding(u, n, alpha, eps,
                         u_a.ancilla_qubits + u_b.ancilla_qubits,
                         u_a.ledger + u_b.ledger, target)


def invert(u_a: BlockEncoding, delta: float, epsilon: float) -> BlockEncoding:
    """(4/(3δ), n_A+1, ε)-encoding of A⁻¹ for a gapped Hermitian target.

    The inverse itself is computed by exact eigendecomposition and re-dilated;
    the ledger charges ceil(c·(1/δ)·ln(1/(δε))) uses of the input encoding
    with c = INVERSE_QUERY_CONSTANT.
    """
    if u_a.target is None:
        raise ValueError("inversion needs an attached Hermitian target")
    a = u_a.target
    if spectral_norm(a - a.conj().T) > 1e-10:
        raise ValueError("inversion target must be Hermitian")
    if not (0 < delta <= 1):
        raise ValueError("need 0 < delta <= 1")
    w, v = np.linalg.eigh(a)
    if np.min(np.abs(w)) < delta * (1.0 - 1e-12) or np.max(np.abs(w)) > 1.0 + 1e-12:
        raise ValueError(
            f"spectrum {w} violates the gap [-1,-δ]∪[δ,1] with δ = {delta}")
    inv = (v * (1.0 / w)) @ v.conj().T
    alpha = 4.0 / (3.0 * delta)
    queries = max(1, math.ceil(
        INVERSE_QUERY_CONSTANT * (1.0 / delta) * math.log(1.0 / (delta * epsilon))))
    be = exact_dilation(inv, alpha, ledger=u_a.ledger.scaled(queries))
    return be.padded(u_a.ancilla_qubits).reattached(inv, float(epsilon))


def _poly_degree(p) -> int:
    deg = p.degree() if callable(getattr(p, "degree", None)) else p.degree
    return int(deg)


def _assert_poly_bounded(p, degree: int, bound: float = 0.5) -> None:
    grid = max(4 * degree, 8)
    x = np.cos(np.pi * (np.arange(grid) + 0.5) / grid)
    vals = p(x)
    if np.max(np.abs(np.imag(vals))) > 1e-12:
        raise ValueError("polynomial transform requires a real polynomial")
    worst = float(np.max(np.abs(np.real(vals))))
    if worst > bound + 1e-12:
        raise ValueError(
            f"polynomial exceeds the sup-norm bound: max |p| = {worst:.6g} > {bound}")


def polynomial_transform(u_a: BlockEncoding, p) -> BlockEncoding:
    """(1, n_A+2, 4d·sqrt(ε/α))-encoding of P(A/α) for |P| ≤ 1/2 on [-1,1].

    ``p`` may be any callable polynomial exposing ``degree()`` (numpy
    polynomial classes and ApproxPolynomial both do).  The sup-norm
    requirement is certified on a Chebyshev grid of 4·deg points; the
    transform is applied by exact spectral calculus on the actual encoded
    block, and the ledger charges deg applications of the encoding plus one
    controlled use and O((n_A+1)·d) one/two-qubit gates.
    """
    if u_a.target is None:
        raise ValueError("polynomial transform needs an attached Hermitian target")
    tgt = u_a.target
    if spectral_norm(tgt - tgt.conj().T) > 1e-10:
        raise ValueError("polynomial transform target must be Hermitian")
    d = _poly_degree(p)
    _assert_poly_bounded(p, d)

    def apply_poly(mat):
        herm = (mat + mat.conj().T) / 2.0
        w, v = np.linalg.eigh(herm)
        w = np.clip(w, -1.0, 1.0)
        vals = np.real(p(w)).astype(complex)
        return (v * vals) @ v.conj().T

    block_poly = apply_poly(u_a.block)
    target_poly = apply_poly(tgt / u_a.alpha)
    claim = 4.0 * d * math.sqrt(u_a.epsilon_claim / u_a.alpha)
    gates = (u_a.ancilla_qubits + 1) * d
    ledger = u_a.ledger.scaled(d + 1).charge(GATES, gates)
    be = exact_dilation(block_poly, 1.0, ledger=ledger)
    return be.padded(u_a.ancilla_qubits + 1).reattached(target_poly, claim)
