"""Positivity, Kadison-Schwarz and complete-positivity verdicts for unital qubit maps."""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..channel import DiagonalParams, TransferMap, require_unital
from ..config import DEFAULT_SEARCH, SearchConfig
from ..linalg import rotation_from_unitary
from .cp import check_cp_choi, check_cp_diagonal, choi_matrix, choi_witness, cp_diagonal_terms, pauli_channel_weights
from .residual import (
    check_ks_contraction,
    check_ks_sufficient_diagonal,
    check_positive,
    contraction_witness,
    example_witness_inequality,
    ks_residual,
    ks_residual_real,
    ks_residual_terms,
    residual_diagonal_expansion,
)
from .search import KsStatus, KsVerdict, sphere_point, to_complex, verify_ks_numeric, verify_ks_numeric_many


@dataclass(frozen=True, eq=False)
class Classification:
    positive: bool
    ks: KsVerdict
    cp_inequalities: Optional[bool]
    cp_choi: bool
    choi_min_eigenvalue: float


def diagonal_params(phi: TransferMap) -> Optional[DiagonalParams]:
    if not phi.is_diagonal:
        return None
    return DiagonalParams(*(float(x) for x in np.diag(phi.T)))


def _sufficient_verdict() -> KsVerdict:
    return KsVerdict(KsStatus.SUFFICIENT_CONDITION_HOLDS, None, float("nan"), 0)


def classify_many(maps: Sequence[TransferMap], cfg: SearchConfig = DEFAULT_SEARCH) -> list:
    """Classify a batch of maps; the numeric searches share one batched descent."""
    maps = list(maps)
    ks: list = [None] * len(maps)
    pending = []
    for i, phi in enumerate(maps):
        require_unital(phi)
        d = diagonal_params(phi)
        if d is not None and check_ks_sufficient_diagonal(d):
            ks[i] = _sufficient_verdict()
        else:
            pending.append(i)
    for i, verdict in zip(pending, verify_ks_numeric_many([maps[i] for i in pending], cfg)):
        ks[i] = verdict
    out = []
    for phi, verdict in zip(maps, ks):
        d = diagonal_params(phi)
        cp_ok, lo = check_cp_choi(phi)
        out.append(
            Classification(
                positive=check_positive(phi),
                ks=verdict,
                cp_inequalities=None if d is None else check_cp_diagonal(d),
                cp_choi=cp_ok,
                choi_min_eigenvalue=lo,
            )
        )
    return out


def classify(phi: TransferMap, cfg: SearchConfig = DEFAULT_SEARCH) -> Classification:
    """All verdicts for one unital map.

    For diagonal maps the closed-form sufficient condition is tried first and the
    numeric search only runs when it fails.
    """
    return classify_many([phi], cfg)[0]


def transform_witness(w, u, v) -> np.ndarray:
    """Witness for ``x -> U Phi(V x V^*) U^*`` given a witness ``w`` for ``Phi``.

    The conjugated map has transfer matrix ``R_U T R_V``; rotations preserve the
    cross product, so ``R_V^T w`` has the same residual.
    """
    return rotation_from_unitary(v).T @ np.asarray(w, dtype=complex)


__all__ = [
    "Classification",
    "KsStatus",
    "KsVerdict",
    "check_cp_choi",
    "check_cp_diagonal",
    "check_ks_contraction",
    "check_ks_sufficient_diagonal",
    "check_positive",
    "choi_matrix",
    "choi_witness",
    "classify",
    "classify_many",
    "contraction_witness",
    "cp_diagonal_terms",
    "diagonal_params",
    "example_witness_inequality",
    "ks_residual",
    "ks_residual_real",
    "ks_residual_terms",
    "pauli_channel_weights",
    "residual_diagonal_expansion",
    "sphere_point",
    "to_complex",
    "transform_witness",
    "verify_ks_numeric",
    "verify_ks_numeric_many",
]
