"""Quadratic fast-forwarding in the evolution time T.

For a negative-definite Hermitian coefficient, the solver's oracle count per
run grows like sqrt(T) (up to logs) instead of linearly: the exponential
e^{-T(1-x)} only needs a degree-O(sqrt(T)) polynomial.  This script solves
du/dt = A u + b across a horizon sweep and tabulates query counts, then does
the same for A = -H^2 given only a block-encoding of H.
"""

import math

import numpy as np

from ffode import OdeProblem, exact_dilation, solve_negdef, solve_sqrt_access

rng = np.random.default_rng(7)

print("=" * 70)
print("negative-definite solver: query count vs horizon")
print("=" * 70)
delta = 0.5
q = np.linalg.qr(rng.standard_normal((2, 2))
                 + 1j * rng.standard_normal((2, 2)))[0]
a = (q * rng.uniform(-1.0, -delta, 2)) @ q.conj().T
a = (a + a.conj().T) / 2
u0 = rng.standard_normal(2)
b = rng.standard_normal(2)

print(f"{'T':>8} {'error':>12} {'success p':>12} {'U_A queries/run':>16}")
horizons = [4.0, 16.0, 64.0, 256.0]
counts = []
for T in horizons:
    rep = solve_negdef(OdeProblem(a, u0, T, b), delta, 1e-5)
    counts.append(rep.ledger["U_A"])
    print(f"{T:8.0f} {rep.error_vs_reference:12.2e} "
          f"{rep.success_probability:12.4f} {rep.ledger['U_A']:16d}")
slope = np.polyfit(np.log(horizons), np.log(counts), 1)[0]
print(f"fitted exponent of queries vs T: {slope:.3f}  (sqrt law predicts 0.5)")

print()
print("=" * 70)
print("square-root access: A = -H^2 with a heat-like source")
print("=" * 70)
h = np.diag([0.0, 1.0]).astype(complex)
u_h = exact_dilation(h, 1.0)
u0 = np.array([1.0, 1.0]) / math.sqrt(2)
src = np.array([1.0, 0.0])  # aligned with the zero mode: ||u(T)|| grows ~ T

print(f"{'T':>8} {'error':>12} {'repeats (AA)':>14} {'gaussian degree':>16}")
for T in (4.0, 16.0, 64.0):
    rep = solve_sqrt_access(OdeProblem(-(h @ h), u0, T, src), u_h, 1e-5)
    print(f"{T:8.0f} {rep.error_vs_reference:12.2e} "
          f"{rep.repeats_aa:14d} {rep.extras['gaussian_degree']:16d}")
print("the repeat count stays O(1) while the degree grows ~ sqrt(T):")
print("solution growth along the zero mode cancels the T in the repeats.")
