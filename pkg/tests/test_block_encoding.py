"""Block-encoding calculus: constructors, verification, ledger accounting."""

import math

import numpy as np
import pytest
from numpy.polynomial.chebyshev import Chebyshev
from numpy.polynomial.polynomial import Polynomial

from ffode import (
    QueryLedger, StatePreparationPair, exact_dilation,
    identity_encoding, invert, lcu_combine, matrix_exponential, multiply,
    polynomial_transform, spectral_norm, verify_block_encoding,
)
from ffode.block_encoding import GATES, PREP_PAIR, U_A, ry
from ffode.poly_approx import approx_exp_shifted


def random_unitary(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.linalg.qr(g)[0]


def random_hermitian_contraction(rng, n, scale=0.9):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (g + g.conj().T) / 2
    return scale * h / spectral_norm(h)


def test_dilation_scaled_identity():
    be = exact_dilation(0.5 * np.eye(2), 1.0)
    assert np.allclose(be.block, 0.5 * np.eye(2))
    assert verify_block_encoding(be, 0.5 * np.eye(2)) < 1e-14
    assert be.ancilla_qubits == 1


def test_dilation_of_unitary_has_zero_offdiagonals():
    rng = np.random.default_rng(0)
    u = random_unitary(rng, 4)
    be = exact_dilation(u, 1.0)
    assert np.allclose(be.unitary[:4, 4:], 0.0, atol=1e-12)
    assert np.allclose(be.unitary[4:, :4], 0.0, atol=1e-12)


def test_dilation_closed_form_offdiagonal():
    a = np.diag([-0.3, -0.9]).astype(complex)
    be = exact_dilation(a, 1.0)
    expected = np.diag([math.sqrt(1 - 0.09), math.sqrt(1 - 0.81)])
    assert np.allclose(be.unitary[:2, 2:], expected, atol=1e-12)
    gram = be.unitary.conj().T @ be.unitary
    assert spectral_norm(gram - np.eye(4)) < 1e-12


def test_dilation_rejects_oversized_matrix():
    with pytest.raises(ValueError):
        exact_dilation(2.0 * np.eye(2), 1.0)


def test_dilation_isometry_on_zero_ancilla_subspace():
    rng = np.random.default_rng(1)
    a = random_hermitian_contraction(rng, 4)
    be = exact_dilation(a, 1.0)
    cols = be.unitary[:, :4]
    assert spectral_norm(cols.conj().T @ cols - np.eye(4)) < 1e-10


def test_verify_detects_attached_error():
    a = np.diag([0.3, -0.4]).astype(complex)
    be = exact_dilation(a, 1.0)
    e = np.diag([0.01, 0.0])
    perturbed = be.reattached(a + e, 0.0100001)
    err = verify_block_encoding(perturbed, a + e)
    assert err == pytest.approx(0.01, abs=1e-12)
    with pytest.raises(ValueError):
        be.reattached(a + e, 0.001)


def test_verify_shape_mismatch():
    be = exact_dilation(np.eye(2) * 0.5, 1.0)
    with pytest.raises(ValueError):
        verify_block_encoding(be, np.eye(3))


def test_prep_pair_from_vector_and_selector():
    pair = StatePreparationPair.from_vector([1.0, 0.0])
    assert np.allclose(pair.target_vector, [1.0, 0.0])
    rng = np.random.default_rng(2)
    a = random_hermitian_contraction(rng, 2)
    other = random_hermitian_contraction(rng, 2)
    lcu = lcu_combine(pair, [exact_dilation(a, 1.0), exact_dilation(other, 1.0)])
    assert verify_block_encoding(lcu, a) < 1e-12


def test_lcu_rotation_pair_exp_minus_identity():
    # the (4,1,0)-pair of (3,-1) built from R_y(±π/3)
    pair = StatePreparationPair(ry(math.pi / 3), ry(-math.pi / 3), 4.0)
    assert np.allclose(pair.target_vector, [3.0, -1.0], atol=1e-12)
    a = np.diag([-0.5, -0.8]).astype(complex)
    expm = matrix_exponential(a, 2.0)
    third = exact_dilation(expm / 3.0, 1.0)
    ident = identity_encoding(2, 1)
    lcu = lcu_combine(pair, [third, ident])
    assert lcu.alpha == pytest.approx(4.0)
    assert verify_block_encoding(lcu, expm - np.eye(2)) < 1e-12


def test_lcu_cancellation():
    pair = StatePreparationPair.from_vector([0.5, -0.5])
    ident = identity_encoding(2, 0)
    lcu = lcu_combine(pair, [ident, ident])
    assert spectral_norm(lcu.encoded) < 1e-12


def test_lcu_requires_matching_alpha():
    a = np.diag([0.2, 0.1]).astype(complex)
    with pytest.raises(ValueError):
        lcu_combine(StatePreparationPair.from_vector([1.0, 1.0]),
                    [exact_dilation(a, 1.0), exact_dilation(a, 2.0)])


def test_multiply_identity_and_diagonals():
    a = np.diag([0.5, -0.25]).astype(complex)
    be_a = exact_dilation(a, 1.0)
    prod = multiply(be_a, identity_encoding(2, 0))
    assert verify_block_encoding(prod, a) < 1e-12
    assert prod.alpha == pytest.approx(1.0)
    half = exact_dilation(0.5 * np.eye(2), 1.0)
    sq = multiply(half, half)
    assert verify_block_encoding(sq, 0.25 * np.eye(2)) < 1e-12
    assert sq.ancilla_qubits == 2


def test_invert_involution_and_closed_form():
    a = np.diag([1.0, -1.0]).astype(complex)
    be = exact_dilation(a, 1.0)
    inv = invert(be, 1.0, 1e-8)
    assert verify_block_encoding(inv, a) < 1e-12

    a2 = np.diag([0.5, -0.25]).astype(complex)
    be2 = exact_dilation(a2, 1.0)
    inv2 = invert(be2, 0.25, 1e-8)
    assert inv2.alpha == pytest.approx(4 / (3 * 0.25))
    assert verify_block_encoding(inv2, np.diag([2.0, -4.0])) < 1e-11
    assert inv2.ancilla_qubits == be2.ancilla_qubits + 1


def test_invert_rejects_gapless_spectrum():
    a = np.diag([0.5, 0.0]).astype(complex)
    be = exact_dilation(a, 1.0)
    with pytest.raises(ValueError):
        invert(be, 0.25, 1e-8)


def test_polynomial_transform_linear_and_chebyshev():
    a = np.diag([0.8, -0.6]).astype(complex)
    be = exact_dilation(a, 1.0)
    half_x = Polynomial([0.0, 0.5])
    out = polynomial_transform(be, half_x)
    assert verify_block_encoding(out, a / 2.0) < 1e-12
    assert out.ancilla_qubits == be.ancilla_qubits + 2

    t2 = Chebyshev([0.0, 0.0, 0.5])  # (2x² - 1)/2
    proj = exact_dilation(np.diag([1.0, 0.0]).astype(complex), 1.0)
    out2 = polynomial_transform(proj, t2)
    assert verify_block_encoding(out2, np.diag([0.5, -0.5])) < 1e-12


def test_polynomial_transform_exp_approx():
    T = 3.0
    a = np.diag([-0.5, -0.9]).astype(complex)
    be = exact_dilation((np.eye(2) + a), 1.0)
    approx = approx_exp_shifted(T, 1e-8)
    out = polynomial_transform(be, approx.scaled(1.0 / 3.0))
    target = matrix_exponential(a, T) / 3.0
    assert spectral_norm(out.encoded - target) < 1e-8


def test_polynomial_transform_rejects_unbounded():
    be = exact_dilation(np.diag([0.9, -0.9]).astype(complex), 1.0)
    with pytest.raises(ValueError):
        polynomial_transform(be, Polynomial([0.0, 1.0]))  # |x| reaches 1 > 1/2


def test_ledger_additivity_exact():
    a = np.diag([0.5, -0.5]).astype(complex)
    be = exact_dilation(a, 1.0)
    assert be.ledger == QueryLedger({U_A: 1})
    prod = multiply(be, be)
    assert prod.ledger == QueryLedger({U_A: 2})
    pair = StatePreparationPair.from_vector([0.5, 0.5])
    lcu = lcu_combine(pair, [be, be])
    assert lcu.ledger == QueryLedger({U_A: 2, PREP_PAIR: 1})

    d = 3
    p = Chebyshev([0.0, 0.25, 0.0, 0.125])
    out = polynomial_transform(be, p)
    expected = QueryLedger({U_A: d + 1, GATES: (be.ancilla_qubits + 1) * d})
    assert out.ledger == expected

    inv = invert(be, 0.5, 1e-6)
    q = math.ceil((1 / 0.5) * math.log(1 / (0.5 * 1e-6)))
    assert inv.ledger == QueryLedger({U_A: q})


def test_ledger_scaling_and_merge():
    led = QueryLedger({U_A: 2, GATES: 5})
    assert led.scaled(3)[U_A] == 6
    merged = led + QueryLedger({U_A: 1, "O_u": 4})
    assert merged[U_A] == 3 and merged["O_u"] == 4
    assert led.total() == 2
    assert led.total(include_gates=True) == 7
    with pytest.raises(ValueError):
        QueryLedger({U_A: -1})


def test_lcu_error_scaling_random():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = random_hermitian_contraction(rng, 4, scale=0.8)
        e = random_hermitian_contraction(rng, 4, scale=1e-3)
        be_exact = exact_dilation(a, 1.0)
        be_err = exact_dilation(a, 1.0).reattached(a + e, spectral_norm(e))
        y = rng.uniform(0.2, 1.0, 2)
        pair = StatePreparationPair.from_vector(y)
        lcu = lcu_combine(pair, [be_err, be_exact])
        target = y[0] * (a + e) + y[1] * a
        measured = spectral_norm(target - lcu.encoded)
        assert measured <= lcu.alpha * spectral_norm(e) + 1e-12


def test_multiply_error_scaling_random():
    rng = np.random.default_rng(4)
    for _ in range(10):
        a = random_hermitian_contraction(rng, 4, 0.7)
        b = random_hermitian_contraction(rng, 4, 0.7)
        ea = random_hermitian_contraction(rng, 4, 1e-3)
        eb = random_hermitian_contraction(rng, 4, 2e-3)
        be_a = exact_dilation(a, 1.0).reattached(a + ea, spectral_norm(ea))
        be_b = exact_dilation(b, 1.0).reattached(b + eb, spectral_norm(eb))
        prod = multiply(be_a, be_b)
        measured = spectral_norm((a + ea) @ (b + eb) - prod.encoded)
        bound = be_a.alpha * be_b.epsilon_claim + be_b.alpha * be_a.epsilon_claim
        assert measured <= bound + 1e-12


def test_padding_preserves_block():
    a = np.diag([0.5, -0.5]).astype(complex)
    be = exact_dilation(a, 1.0).padded(2)
    assert be.ancilla_qubits == 3
    assert verify_block_encoding(be, a) < 1e-12
