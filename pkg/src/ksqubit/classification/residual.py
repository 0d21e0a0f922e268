"""Kadison-Schwarz residual of a unital qubit map and its closed-form bounds.

For ``Phi(w0 1 + w.sigma) = w0 1 + (T w).sigma`` with real ``T`` one has

    Phi(x^* x) - Phi(x)^* Phi(x)
        = (||w||^2 - ||T w||^2) 1 - i (T[w, conj w] - [T w, conj(T w)]).sigma

so the map satisfies the Kadison-Schwarz inequality iff the residual

    (||w||^2 - ||T w||^2) - ||T[w, conj w] - [T w, conj(T w)]||

is non-negative for every w in C^3.
"""
import math

import numpy as np

from ..channel import DiagonalParams, TransferMap, require_unital
from ..config import TOL
from ..linalg import as_cvec3, cross, norm, svd3


def ks_residual_terms(phi: TransferMap, w):
    """``(gap, margin)``: the commutator gap norm and ``||w||^2 - ||T w||^2``."""
    require_unital(phi)
    w = as_cvec3(w)
    T = phi.T
    tw = T @ w
    gap = T @ cross(w, np.conj(w)) - cross(tw, np.conj(tw))
    margin = norm(w) ** 2 - norm(tw) ** 2
    return norm(gap), margin


def ks_residual(phi: TransferMap, w) -> float:
    gap, margin = ks_residual_terms(phi, w)
    return margin - gap


def ks_residual_real(T: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorised residual at ``w = u + i v`` for unit-norm ``w``.

    Uses ``w x conj(w) = -2i (u x v)`` and ``Tw x conj(Tw) = -2i (Tu x Tv)``.
    ``T`` broadcasts as ``(..., 3, 3)`` against ``u, v`` of shape ``(..., 3)``;
    all arithmetic is elementwise so a batch gives the same bits as a single
    evaluation.
    """
    tu = _matvec(T, u)
    tv = _matvec(T, v)
    n = cross(u, v)
    g = _matvec(T, n) - cross(tu, tv)
    margin = (u * u).sum(-1) + (v * v).sum(-1) - (tu * tu).sum(-1) - (tv * tv).sum(-1)
    return margin - 2.0 * np.sqrt((g * g).sum(-1))


def _matvec(T, x):
    return np.stack(
        [T[..., i, 0] * x[..., 0] + T[..., i, 1] * x[..., 1] + T[..., i, 2] * x[..., 2] for i in range(3)],
        axis=-1,
    )


def residual_diagonal_expansion(params: DiagonalParams, w) -> float:
    """Residual of a diagonal map from its coordinate expansion.

    With ``alpha_k = |1 - lambda_k^2|`` and ``A = (l1 - l2 l3)^2`` etc. the
    Kadison-Schwarz inequality reads

        A|w2 w3* - w3 w2*|^2 + B|w1 w3* - w3 w1*|^2 + C|w1 w2* - w2 w1*|^2
            <= (alpha |w1|^2 + beta |w2|^2 + gamma |w3|^2)^2

    and the residual is the square root of the right side minus that of the left.
    Valid for ``|lambda_k| <= 1``.
    """
    l1, l2, l3 = params.as_tuple()
    w = as_cvec3(w)
    alpha, beta, gamma = abs(1 - l1 * l1), abs(1 - l2 * l2), abs(1 - l3 * l3)
    a = (l1 - l2 * l3) ** 2
    b = (l2 - l1 * l3) ** 2
    c = (l3 - l1 * l2) ** 2
    w1, w2, w3 = w
    lhs = (
        a * abs(w2 * np.conj(w3) - w3 * np.conj(w2)) ** 2
        + b * abs(w1 * np.conj(w3) - w3 * np.conj(w1)) ** 2
        + c * abs(w1 * np.conj(w2) - w2 * np.conj(w1)) ** 2
    )
    rhs = alpha * abs(w1) ** 2 + beta * abs(w2) ** 2 + gamma * abs(w3) ** 2
    return rhs - math.sqrt(lhs)


def example_witness_inequality(params: DiagonalParams):
    """Both sides of the residual inequality for a diagonal map at ``w = (1, 1, i)``.

    Returns ``(lhs, rhs)`` with ``lhs = 2 sqrt((l1 - l2 l3)^2 + (l2 - l1 l3)^2)`` and
    ``rhs = 3 - l1^2 - l2^2 - l3^2``; the residual there equals ``rhs - lhs``.  At
    ``l3 = 1`` this is ``2 sqrt(2) |l1 - l2| <= 2 - l1^2 - l2^2``.
    """
    l1, l2, l3 = params.as_tuple()
    lhs = 2.0 * math.sqrt((l1 - l2 * l3) ** 2 + (l2 - l1 * l3) ** 2)
    rhs = 3.0 - l1 * l1 - l2 * l2 - l3 * l3
    return lhs, rhs


def largest_singular_value(phi: TransferMap) -> float:
    return float(svd3(phi.T)[1][0])


def check_positive(phi: TransferMap, tol: float = TOL.contraction) -> bool:
    """Positivity of a unital map: ``T`` maps the unit Bloch ball into itself."""
    require_unital(phi)
    return largest_singular_value(phi) <= 1.0 + tol


def check_ks_contraction(phi: TransferMap, tol: float = TOL.contraction) -> bool:
    """``||T w|| <= ||w||`` on C^3.

    For real ``T`` and ``w = u + i v``, ``||T w||^2 = ||T u||^2 + ||T v||^2``, so the
    complex bound is the real one: the top singular value is at most 1.  The
    conjugation condition ``T conj(w) = conj(T w)`` is automatic for real ``T``.
    """
    require_unital(phi)
    return largest_singular_value(phi) <= 1.0 + tol


def contraction_witness(phi: TransferMap):
    """Top right singular vector of ``T`` (real, unit) and its residual ``1 - sigma_1^2``."""
    require_unital(phi)
    _, sigma, v = svd3(phi.T)
    w = v[:, 0].copy()
    k = int(np.flatnonzero(np.abs(w) > 1e-12)[0])
    if w[k] < 0:
        w = -w
    return w.astype(complex), 1.0 - float(sigma[0]) ** 2


def check_ks_sufficient_diagonal(
    params: DiagonalParams, tol: float = TOL.inequality, require_contraction: bool = True
) -> bool:
    """Closed-form sufficient condition for a diagonal map to be Kadison-Schwarz.

    (1 + l1^2)(3 + l2^2 + l3^2 - l1^2) <= 4 (1 + l1 l2 l3), likewise with the
    roles of the indices cycled, and l1^2 + l2^2 + l3^2 <= 1 + 2 l1 l2 l3.

    The four inequalities are derived under ``|lambda_k| <= 1``; outside the cube
    they can hold for non-positive maps (e.g. all lambdas equal to 1.1), so by
    default the contraction bound is required as well.
    """
    l1, l2, l3 = params.as_tuple()
    if require_contraction and max(abs(l1), abs(l2), abs(l3)) > 1.0 + tol:
        return False
    p = 4.0 * (1.0 + l1 * l2 * l3)
    s1, s2, s3 = l1 * l1, l2 * l2, l3 * l3
    return (
        (1 + s1) * (3 + s2 + s3 - s1) <= p + tol
        and (1 + s2) * (3 + s1 + s3 - s2) <= p + tol
        and (1 + s3) * (3 + s1 + s2 - s3) <= p + tol
        and s1 + s2 + s3 <= 1 + 2 * l1 * l2 * l3 + tol
    )
