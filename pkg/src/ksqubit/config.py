"""Numerical tolerances and search budgets used throughout the package."""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # Jacobi iterations (eigen / SVD)
    jacobi_offdiag: float = 1e-13
    jacobi_max_sweeps: int = 100
    # input validation
    symmetric: float = 1e-10
    hermitian: float = 1e-10
    unitary: float = 1e-9
    rotation: float = 1e-9
    # predicates on 2x2 elements and maps
    predicate: float = 1e-10
    contraction: float = 1e-10
    # slack on the closed-form CP / KS inequalities
    inequality: float = 1e-12
    # Choi matrix PSD threshold
    choi_eig: float = 1e-10


TOL = Tolerances()


@dataclass(frozen=True)
class SearchConfig:
    """Budget of the certificate search over the gauge-fixed unit sphere in C^3.

    ``n_samples`` low-discrepancy points are scored first, then ``n_starts``
    Nelder-Mead descents are launched from the best of them.  A located residual
    below ``-cert_tol`` is reported as a certified violation.
    """

    n_samples: int = 20000
    n_starts: int = 32
    ftol: float = 1e-10
    xtol: float = float("inf")
    max_iter: int = 500
    step: float = 0.2
    seed: int = 0
    cert_tol: float = 1e-7

    def with_(self, **kwargs) -> "SearchConfig":
        return replace(self, **kwargs)


DEFAULT_SEARCH = SearchConfig()

# Grid scans classify tens of thousands of maps; this smaller budget keeps a
# 201x201 sweep at desk scale.  Raise it from the command line when needed.
SCAN_SEARCH = SearchConfig(n_samples=2000, n_starts=8, max_iter=300)
