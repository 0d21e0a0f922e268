"""Kadison-Schwarz, positivity and complete-positivity checks for unital qubit maps."""
from .channel import (
    BistochasticMap,
    DiagonalParams,
    TransferMap,
    apply,
    canonical_decompose,
    conjugate_by_unitary,
    convex_combine,
    diagonal_map,
    random_bistochastic,
)
from .classification import Classification, KsStatus, KsVerdict, classify, ks_residual, verify_ks_numeric
from .config import DEFAULT_SEARCH, SCAN_SEARCH, TOL, SearchConfig
from .pauli import QubitElement

__version__ = "0.1.0"

__all__ = [
    "BistochasticMap",
    "Classification",
    "DEFAULT_SEARCH",
    "DiagonalParams",
    "KsStatus",
    "KsVerdict",
    "QubitElement",
    "SCAN_SEARCH",
    "SearchConfig",
    "TOL",
    "TransferMap",
    "apply",
    "canonical_decompose",
    "classify",
    "conjugate_by_unitary",
    "convex_combine",
    "diagonal_map",
    "ks_residual",
    "random_bistochastic",
    "verify_ks_numeric",
]
