"""
Kadison-Schwarz maps that are not completely positive
=====================================================

Along the line (lambda, lambda, lambda) complete positivity needs
lambda >= -1/3, while the sufficient Kadison-Schwarz conditions hold down to
lambda = 1 - sqrt 2.  In between sit maps that satisfy the operator inequality
without being completely positive.
"""
import numpy as np

from ksqubit import classify, diagonal_map
from ksqubit.channel import DiagonalParams
from ksqubit.classification import check_cp_diagonal, check_ks_sufficient_diagonal, verify_ks_numeric

print(f"window: [{1 - np.sqrt(2):.6f}, {-1 / 3:.6f})")

for lam in (-0.45, -0.41, -0.38, -0.35, -1 / 3, -0.30):
    d = DiagonalParams(lam, lam, lam)
    numeric = verify_ks_numeric(d.to_map())
    print(f"lambda = {lam:+.4f}  cp = {check_cp_diagonal(d)!s:5}  "
          f"sufficient = {check_ks_sufficient_diagonal(d)!s:5}  "
          f"search: {numeric.label:12} min residual {numeric.min_residual:+.3e}")

# classify uses the closed form first and skips the search
r = classify(diagonal_map(-0.4, -0.4, -0.4))
print(r.ks.label, r.cp_choi, r.choi_min_eigenvalue)
