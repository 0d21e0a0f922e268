"""Fixed-size linear algebra for the Pauli picture of M_2(C).

Everything here works on 3-vectors, 3x3 real matrices and 2x2 / 4x4 complex
matrices.  Eigen- and singular-value problems are solved with cyclic Jacobi
rotations, which converge unconditionally at these sizes.
"""
import math

import numpy as np

from .config import TOL

SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
IDENTITY2 = np.eye(2, dtype=complex)


class LinAlgInputError(ValueError):
    """Input matrix violates the structural precondition of an operation."""


def as_cvec3(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {w.shape}")
    return w


def cross(u, v) -> np.ndarray:
    """Cross product on C^3 (no conjugation); broadcasts over leading axes."""
    u = np.asarray(u)
    v = np.asarray(v)
    return np.stack(
        [
            u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1],
            u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2],
            u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0],
        ],
        axis=-1,
    )


def norm(w) -> float:
    w = np.asarray(w)
    return math.sqrt(float(np.sum(w.real**2 + w.imag**2)))


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(np.abs(off) ** 2)))


def jacobi_eigh(a, tol: float = TOL.jacobi_offdiag, max_sweeps: int = TOL.jacobi_max_sweeps):
    """Eigen-decomposition of a small real symmetric or complex Hermitian matrix.

    Returns ``(d, V)`` with ``a = V @ diag(d) @ V^H`` and ``d`` unsorted.
    Iterates cyclic sweeps until the off-diagonal Frobenius mass drops below
    ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    n = a.shape[0]
    v = np.eye(n, dtype=a.dtype)
    scale = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    if scale == 0.0:
        return np.zeros(n), v
    threshold = tol * scale
    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag <= 1e-300:
                    continue
                phase = g / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # phase-fix the (p, q) entry to a real one, then a real rotation
                g2 = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=a.dtype)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g2
                a[idx, :] = g2.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ g2
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.real(np.diag(a)).copy(), v


def sym_eig3(s):
    """Diagonalise a real symmetric 3x3 matrix: ``S = V diag(d) V^T``, d descending."""
    s = np.asarray(s, dtype=float)
    if s.shape != (3, 3):
        raise ValueError("sym_eig3 expects a 3x3 matrix")
    if np.max(np.abs(s - s.T)) > TOL.symmetric:
        raise LinAlgInputError("matrix is not symmetric")
    d, v = jacobi_eigh(0.5 * (s + s.T))
    order = np.argsort(-d, kind="stable")
    return v[:, order], d[order]


def herm_eig(h) -> np.ndarray:
    """Real eigenvalues (ascending) of a Hermitian 2x2 or 4x4 matrix."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("herm_eig expects a square matrix")
    if np.max(np.abs(h - h.conj().T)) > TOL.hermitian:
        raise LinAlgInputError("matrix is not Hermitian")
    d, _ = jacobi_eigh(0.5 * (h + h.conj().T))
    return np.sort(d)


def herm_eigh(h):
    """Like :func:`herm_eig` but also returns the eigenvectors as columns."""
    h = np.asarray(h, dtype=complex)
    if np.max(np.abs(h - h.conj().T)) > TOL.hermitian:
        raise LinAlgInputError("matrix is not Hermitian")
    d, v = jacobi_eigh(0.5 * (h + h.conj().T))
    order = np.argsort(d, kind="stable")
    return d[order], v[:, order]


def _complete_basis(cols: list) -> list:
    # extend orthonormal columns in R^3 to a full orthonormal basis
    cols = list(cols)
    if len(cols) == 0:
        return [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])]
    if len(cols) == 1:
        u = cols[0]
        e = np.zeros(3)
        e[int(np.argmin(np.abs(u)))] = 1.0
        e = e - (e @ u) * u
        cols.append(e / np.linalg.norm(e))
    if len(cols) == 2:
        c = np.cross(cols[0], cols[1])
        cols.append(c / np.linalg.norm(c))
    return cols


def svd3(t, tol: float = TOL.jacobi_offdiag, max_sweeps: int = TOL.jacobi_max_sweeps):
    """Singular value decomposition of a real 3x3 matrix by one-sided Jacobi.

    Returns ``(U, sigma, V)`` with ``T = U diag(sigma) V^T``, both factors
    orthogonal and ``sigma`` non-negative, descending.
    """
    a = np.array(t, dtype=float)
    if a.shape != (3, 3):
        raise ValueError("svd3 expects a 3x3 matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("svd3 input has non-finite entries")
    # work at unit scale so squared column norms neither underflow nor overflow
    scale = float(np.max(np.abs(a)))
    if scale > 0.0:
        a = a / scale
    v = np.eye(3)
    for _ in range(max_sweeps):
        rotated = False
        for i in range(2):
            for j in range(i + 1, 3):
                alpha = float(a[:, i] @ a[:, i])
                beta = float(a[:, j] @ a[:, j])
                gamma = float(a[:, i] @ a[:, j])
                if gamma == 0.0 or abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                if abs(zeta) > 1e150:
                    tt = 0.5 / zeta
                else:
                    tt = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + tt * tt)
                s = c * tt
                ai = a[:, i].copy()
                a[:, i] = c * ai - s * a[:, j]
                a[:, j] = s * ai + c * a[:, j]
                vi = v[:, i].copy()
                v[:, i] = c * vi - s * v[:, j]
                v[:, j] = s * vi + c * v[:, j]
        if not rotated:
            break
    sigma = np.sqrt(np.sum(a * a, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    a = a[:, order]
    v = v[:, order]
    cutoff = 1e-14 * max(sigma[0], 1e-300)
    cols = [a[:, k] / sigma[k] for k in range(3) if sigma[k] > cutoff]
    cols = _complete_basis(cols)
    u = np.column_stack(cols)
    return u, sigma * scale, v


def polar_rotation(t):
    """Factor ``T = R S`` with R a proper rotation and S symmetric.

    When det T < 0 the sign is carried by S (one negative eigenvalue) so that R
    stays in SO(3).
    """
    u, sigma, v = svd3(t)
    sign = 1.0 if np.linalg.det(u @ v.T) >= 0 else -1.0
    fix = np.diag([1.0, 1.0, sign])
    r = u @ fix @ v.T
    s = v @ np.diag([sigma[0], sigma[1], sign * sigma[2]]) @ v.T
    return r, 0.5 * (s + s.T)


def rotation_from_unitary(u) -> np.ndarray:
    """Rotation matrix of the adjoint action ``w.sigma -> U (w.sigma) U^*``."""
    u = np.asarray(u, dtype=complex)
    ud = u.conj().T
    r = np.empty((3, 3))
    for j in range(3):
        img = u @ SIGMA[j] @ ud
        for i in range(3):
            r[i, j] = 0.5 * np.trace(SIGMA[i] @ img).real
    return r


def is_unitary(u, tol: float = TOL.unitary) -> bool:
    u = np.asarray(u, dtype=complex)
    return u.shape == (2, 2) and float(np.max(np.abs(u @ u.conj().T - IDENTITY2))) <= tol


def is_rotation(r, tol: float = TOL.rotation) -> bool:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        return False
    return float(np.max(np.abs(r.T @ r - np.eye(3)))) <= tol and abs(np.linalg.det(r) - 1.0) <= tol


def so3_to_su2(r) -> np.ndarray:
    """Lift a proper rotation to a unitary ``U`` with ``U (w.sigma) U^* = (R w).sigma``.

    Of the two lifts ``+-U`` the one with non-negative trace is returned; at a
    tie (rotation by pi) the first non-zero entry is made to have positive real
    part, or positive imaginary part if that is zero.
    """
    r = np.asarray(r, dtype=float)
    if not is_rotation(r):
        raise LinAlgInputError("input is not a proper rotation")
    # quaternion, largest-component branch for stability
    tr = r[0, 0] + r[1, 1] + r[2, 2]
    cands = [1.0 + tr, 1.0 + r[0, 0] - r[1, 1] - r[2, 2],
             1.0 - r[0, 0] + r[1, 1] - r[2, 2], 1.0 - r[0, 0] - r[1, 1] + r[2, 2]]
    k = int(np.argmax(cands))
    f = 0.5 * math.sqrt(max(cands[k], 0.0))
    if k == 0:
        q = [f, (r[2, 1] - r[1, 2]) / (4 * f), (r[0, 2] - r[2, 0]) / (4 * f), (r[1, 0] - r[0, 1]) / (4 * f)]
    elif k == 1:
        q = [(r[2, 1] - r[1, 2]) / (4 * f), f, (r[0, 1] + r[1, 0]) / (4 * f), (r[0, 2] + r[2, 0]) / (4 * f)]
    elif k == 2:
        q = [(r[0, 2] - r[2, 0]) / (4 * f), (r[0, 1] + r[1, 0]) / (4 * f), f, (r[1, 2] + r[2, 1]) / (4 * f)]
    else:
        q = [(r[1, 0] - r[0, 1]) / (4 * f), (r[0, 2] + r[2, 0]) / (4 * f), (r[1, 2] + r[2, 1]) / (4 * f), f]
    q = np.array(q) / math.sqrt(sum(x * x for x in q))
    u = q[0] * IDENTITY2 - 1j * np.einsum("k,kij->ij", q[1:], SIGMA)
    return _fix_lift_sign(u)


def _fix_lift_sign(u: np.ndarray) -> np.ndarray:
    tr = np.trace(u).real
    if abs(tr) > 1e-12:
        return u if tr > 0 else -u
    for z in u.ravel():
        if abs(z) > 1e-12:
            if abs(z.real) > 1e-12:
                return u if z.real > 0 else -u
            return u if z.imag > 0 else -u
    return u
