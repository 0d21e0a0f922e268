"""
The transpose map is positive but not Kadison-Schwarz
=====================================================

On M_2(C) the transpose x -> x^T is the diagonal map with lambdas (1, -1, 1).
It sends states to states, yet it fails the operator inequality
Phi(x)^* Phi(x) <= Phi(x^* x) and is not completely positive.
"""
import numpy as np

from ksqubit import classify, diagonal_map
from ksqubit.channel import apply_matrix
from ksqubit.classification import ks_residual
from ksqubit.linalg import SIGMA

phi = diagonal_map(1, -1, 1)

# it really is the transpose
x = np.array([[1, 2j], [3, 4 - 1j]])
print(apply_matrix(phi, x))

# the residual at w = (1, 1, i) is -4 sqrt 2
w = np.array([1, 1, 1j])
print("residual at (1, 1, i):", ks_residual(phi, w), -4 * np.sqrt(2))

# the search finds a deeper point; -2 is the true minimum on the unit sphere
result = classify(phi)
print("positive:", result.positive)
print("ks:", result.ks.label, result.ks.min_residual)
print("witness:", np.round(result.ks.witness, 6))
print("cp (Choi):", result.cp_choi, "smallest Choi eigenvalue:", result.choi_min_eigenvalue)

# the witness is a concrete x for which the inequality fails
xw = np.einsum("k,kij->ij", result.ks.witness, SIGMA)
lhs = apply_matrix(phi, xw.conj().T @ xw)
px = apply_matrix(phi, xw)
print("eigenvalues of Phi(x*x) - Phi(x)*Phi(x):", np.linalg.eigvalsh(lhs - px.conj().T @ px))
