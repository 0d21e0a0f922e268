"""Self-contained violation certificates that can be re-checked without the search."""
from typing import Optional

import numpy as np

from .channel import TransferMap, channel_from_dict, channel_to_dict
from .classification import KsStatus, ks_residual, ks_residual_terms, verify_ks_numeric
from .config import DEFAULT_SEARCH, SearchConfig


def witness_to_reals(w) -> list:
    w = np.asarray(w, dtype=complex)
    return [float(x) for z in w for x in (z.real, z.imag)]


def witness_from_reals(xs) -> np.ndarray:
    xs = [float(x) for x in xs]
    if len(xs) != 6:
        raise ValueError("a witness has six real coordinates")
    return np.array([complex(xs[2 * k], xs[2 * k + 1]) for k in range(3)])


def make_certificate(phi: TransferMap, cfg: SearchConfig = DEFAULT_SEARCH) -> Optional[dict]:
    """Certificate dict for a Kadison-Schwarz violation, or ``None`` if none is found."""
    verdict = verify_ks_numeric(phi, cfg)
    if verdict.status is not KsStatus.VIOLATION_CERTIFIED:
        return None
    gap, margin = ks_residual_terms(phi, verdict.witness)
    return {
        "witness": witness_to_reals(verdict.witness),
        "residual": margin - gap,
        "commutator_gap": gap,
        "norm_margin": margin,
    }


def certificate_document(phi: TransferMap, cfg: SearchConfig = DEFAULT_SEARCH) -> dict:
    return {"map": channel_to_dict(phi), "certificate": make_certificate(phi, cfg)}


def check_certificate(doc: dict, cert_tol: float = DEFAULT_SEARCH.cert_tol) -> bool:
    """Re-evaluate the residual at the stored witness and confirm it is below ``-cert_tol``."""
    cert = doc.get("certificate")
    if cert is None:
        return False
    phi = channel_from_dict(doc["map"])
    w = witness_from_reals(cert["witness"])
    return ks_residual(phi, w) < -cert_tol
