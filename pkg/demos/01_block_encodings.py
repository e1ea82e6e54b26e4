"""Block-encodings from scratch: dilation, calculus, query accounting.

A block-encoding hides a (generally non-unitary) matrix A inside the top-left
block of a larger unitary, scaled by a normalization alpha.  This walkthrough
builds one explicitly, verifies its error claim, and composes encodings with
the four calculus rules while watching the query ledger grow.
"""

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev

from ffode import (
    StatePreparationPair, exact_dilation, invert, lcu_combine, multiply,
    polynomial_transform, spectral_norm, verify_block_encoding,
)

rng = np.random.default_rng(1)

print("=" * 70)
print("1. unitary dilation of a Hermitian contraction")
print("=" * 70)
g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
a = (g + g.conj().T) / 2
a = 0.7 * a / spectral_norm(a)
be = exact_dilation(a, 1.0)
print("target A =\n", np.round(a, 4))
print("dilation unitary (4x4):\n", np.round(be.unitary, 3))
print("encoded block == A?  error:", verify_block_encoding(be, a))
print("ledger:", be.ledger.counts)

print()
print("=" * 70)
print("2. linear combination:  0.6*A + 0.4*B through a state-prep pair")
print("=" * 70)
b = 0.5 * np.eye(2, dtype=complex)
pair = StatePreparationPair.from_vector([0.6, 0.4])
combo = lcu_combine(pair, [be, exact_dilation(b, 1.0)])
print("normalization alpha grows to beta =", combo.alpha)
print("error vs 0.6A + 0.4B:",
      verify_block_encoding(combo, 0.6 * a + 0.4 * b))
print("ledger (one use of each block + the pair):", combo.ledger.counts)

print()
print("=" * 70)
print("3. product and inverse")
print("=" * 70)
prod = multiply(be, exact_dilation(b, 1.0))
print("product error:", verify_block_encoding(prod, a @ b))
gapped = np.diag([0.5, -0.25]).astype(complex)
inv = invert(exact_dilation(gapped, 1.0), 0.25, 1e-8)
print("inverse of diag(0.5, -0.25) encodes diag(2, -4); error:",
      verify_block_encoding(inv, np.diag([2.0, -4.0])))
print("inverse normalization 4/(3 delta) =", inv.alpha)
print("inverse ledger charges (1/delta) log(1/(delta eps)) queries:",
      inv.ledger.counts)

print()
print("=" * 70)
print("4. polynomial eigenvalue transform (the QSVT contract)")
print("=" * 70)
t2 = Chebyshev([0.0, 0.0, 0.5])  # (2x^2 - 1)/2, bounded by 1/2
proj = exact_dilation(np.diag([1.0, 0.0]).astype(complex), 1.0)
out = polynomial_transform(proj, t2)
print("T2/2 on diag(1, 0) encodes diag(1/2, -1/2); error:",
      verify_block_encoding(out, np.diag([0.5, -0.5])))
print("degree-2 transform ledger:", out.ledger.counts)
print()
print("done: every constructor re-verified its lemma-stated error bound.")
