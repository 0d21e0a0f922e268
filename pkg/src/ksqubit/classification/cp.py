"""Complete positivity: closed-form test for diagonal maps and a Choi-matrix oracle."""
import numpy as np

from ..channel import DiagonalParams, TransferMap, apply_matrix, require_unital
from ..config import TOL
from ..linalg import herm_eig, herm_eigh


def check_cp_diagonal(params: DiagonalParams, tol: float = TOL.inequality) -> bool:
    """Complete positivity of ``Phi_(l1, l2, l3)``:

        (l1 + l2)^2 <= (1 + l3)^2
        (l1 - l2)^2 <= (1 - l3)^2
        (1 - (l1^2 + l2^2 + l3^2))^2 >= 4 (l1^2 l2^2 + l2^2 l3^2 + l1^2 l3^2 - 2 l1 l2 l3)
    """
    l1, l2, l3 = params.as_tuple()
    s1, s2, s3 = l1 * l1, l2 * l2, l3 * l3
    return (
        (l1 + l2) ** 2 <= (1 + l3) ** 2 + tol
        and (l1 - l2) ** 2 <= (1 - l3) ** 2 + tol
        and (1 - (s1 + s2 + s3)) ** 2 + tol >= 4 * (s1 * s2 + s2 * s3 + s1 * s3 - 2 * l1 * l2 * l3)
    )


def cp_diagonal_terms(params: DiagonalParams):
    """Slack of each of the three inequalities (non-negative when satisfied)."""
    l1, l2, l3 = params.as_tuple()
    s1, s2, s3 = l1 * l1, l2 * l2, l3 * l3
    return (
        (1 + l3) ** 2 - (l1 + l2) ** 2,
        (1 - l3) ** 2 - (l1 - l2) ** 2,
        (1 - (s1 + s2 + s3)) ** 2 - 4 * (s1 * s2 + s2 * s3 + s1 * s3 - 2 * l1 * l2 * l3),
    )


def choi_matrix(phi: TransferMap) -> np.ndarray:
    """``sum_ij E_ij (x) Phi(E_ij)`` as a 4x4 Hermitian matrix."""
    require_unital(phi)
    c = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[i, j] = 1.0
            c[2 * i:2 * i + 2, 2 * j:2 * j + 2] = apply_matrix(phi, e)
    return 0.5 * (c + c.conj().T)


def pauli_channel_weights(params: DiagonalParams) -> np.ndarray:
    """Mixture weights ``p_k`` of ``Phi_(l1, l2, l3) = sum p_k sigma_k . sigma_k``."""
    l1, l2, l3 = params.as_tuple()
    return 0.25 * np.array([1 + l1 + l2 + l3, 1 + l1 - l2 - l3, 1 - l1 + l2 - l3, 1 - l1 - l2 + l3])


def check_cp_choi(phi: TransferMap, tol: float = TOL.choi_eig):
    """``(is_cp, smallest Choi eigenvalue)``."""
    lo = float(herm_eig(choi_matrix(phi))[0])
    return lo >= -tol, lo


def choi_witness(phi: TransferMap):
    """Eigenvector of the smallest Choi eigenvalue and the eigenvalue itself."""
    d, v = herm_eigh(choi_matrix(phi))
    return v[:, 0], float(d[0])
