"""Hardness witnesses: why generic quantum ODE solvers cannot be fast.

Two sources of overhead are certified on concrete instances: an eigenvalue
real-part gap forces e^{gap·T} oracle queries, and non-normality forces
mu(A) = ||A'A - AA'||^(1/2) queries.  Both reductions run through the
amplifier framework: a solver that maps two nearly identical inputs to
clearly distinguishable outputs must pay 1/sqrt(eps) queries, because
worst-case prepare oracles satisfy ||O_psi - O_phi|| = ||psi - phi||.
"""

import math

import numpy as np

from ffode import (
    AmplifierCircuit, amplifier_bound_check, equilibrium_reduction_check,
    shifting_equivalence_check, witness_linear_system,
    witness_nonnormal_homogeneous, witness_realpart_gap,
    worst_case_oracle_pair,
)

rng = np.random.default_rng(3)


def show(pair):
    print(f"--- {pair.family} ---")
    for name, (measured, bound, sense) in sorted(pair.certified.items()):
        print(f"  {name}: {measured:.6g} {sense} {bound:.6g}")
    if "implied_queries" in pair.params:
        print(f"  implied query floor: {pair.params['implied_queries']:.4g}")


print("=" * 70)
print("real-part gap witness (eps = 0.01, orthonormal eigenvectors)")
print("=" * 70)
pair = witness_realpart_gap(np.eye(3, dtype=complex), [0.5, -0.5, 0.0], 0.01)
show(pair)

print()
print("=" * 70)
print("non-normal 3x3 witness (delta = 1/2, purely imaginary spectrum)")
print("=" * 70)
show(witness_nonnormal_homogeneous(0.5))

print()
print("=" * 70)
print("worst-case oracle pair and the amplifier circuit bound")
print("=" * 70)
eps = 0.01
psi = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
phi = (1 - eps) * psi
phi[1] = math.sqrt(1 - (1 - eps) ** 2)
o_psi, o_phi = worst_case_oracle_pair(psi, phi)
print(f"||O_psi - O_phi|| = {np.linalg.norm(o_psi - o_phi, 2):.6f}"
      f"  (sqrt(2 eps) = {math.sqrt(2 * eps):.6f})")
for q in (1, 4, 8):
    inter = [np.linalg.qr(rng.standard_normal((8, 8))
                          + 1j * rng.standard_normal((8, 8)))[0]
             for _ in range(q + 1)]
    circ = AmplifierCircuit(inter, ["oracle"] * q, ancilla_qubits=1)
    ratio = amplifier_bound_check((o_psi, o_phi), circ)
    print(f"q = {q}: distance / (2q sqrt(2 eps)) = {ratio:.4f}  (must be <= 1)")

print()
print("=" * 70)
print("shifting equivalence and the equilibrium reduction")
print("=" * 70)
a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
u0 = rng.standard_normal(4)
u0 = u0 / np.linalg.norm(u0)
print("A and A + 0.9 I give the same normalized solution:",
      shifting_equivalence_check(a, 0.9, u0, 1.5))
rows = equilibrium_reduction_check(-np.eye(3), [1.0, 0, 0], [0, 1.0, 0],
                                   [1, 5, 10, 20])
for row in rows:
    print(f"  T = {row['T']:4.0f}: |u(T)> vs |A^-1 b> distance "
          f"{row['distance']:.3e} <= bound {row['bound']:.3e}")

print()
print("=" * 70)
print("linear-system witness (kappa = 10)")
print("=" * 70)
q1 = np.linalg.qr(rng.standard_normal((5, 5))
                  + 1j * rng.standard_normal((5, 5)))[0]
q2 = np.linalg.qr(rng.standard_normal((5, 5))
                  + 1j * rng.standard_normal((5, 5)))[0]
show(witness_linear_system(10.0, q1, q2))
