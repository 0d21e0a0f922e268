"""
Reducing a unital map to diagonal form
======================================

Any unital qubit map is a diagonal map sandwiched between two unitary
conjugations, Phi(x) = U Phi_D(W x W^*) U^*.  Kadison-Schwarz and CP
verdicts do not change under such conjugations, so classifying Phi_D is
enough.
"""
import numpy as np

from ksqubit import canonical_decompose, classify, random_bistochastic
from ksqubit.classification import ks_residual, transform_witness

phi = random_bistochastic(42, "contractive")
print("T =\n", np.round(phi.T, 4))

dec = canonical_decompose(phi)
print("lambdas:", np.round(dec.params.as_tuple(), 6))
print("outer U =\n", np.round(dec.outer, 4))
print("inner W =\n", np.round(dec.inner, 4))
print("reconstruction error:", dec.reconstruction_error, "single unitary:", dec.single_unitary)

# same verdict before and after
a = classify(phi)
b = classify(dec.params.to_map())
print("original:", a.ks.label, a.ks.min_residual, a.cp_choi)
print("diagonal:", b.ks.label, b.ks.min_residual, b.cp_choi)

# a witness for the diagonal map carries over to the original one
if b.ks.witness is not None:
    w = transform_witness(b.ks.witness, dec.outer, dec.inner)
    print("transported residual:", ks_residual(phi, w), "vs", b.ks.min_residual)
