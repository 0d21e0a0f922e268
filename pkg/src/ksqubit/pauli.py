"""Pauli-basis coordinates on M_2(C).

A 2x2 complex matrix is written ``a = w0 * 1 + w . sigma`` with ``w0`` complex
and ``w`` in C^3.  The product of two such elements stays in closed form:

    (x0 + x.sigma)(y0 + y.sigma) = (x0 y0 + x.y) + (x0 y + y0 x + i x cross y).sigma

where ``x.y`` is the bilinear (unconjugated) dot product.
"""
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .linalg import IDENTITY2, SIGMA, cross, herm_eig, norm


@dataclass(frozen=True, eq=False)
class QubitElement:
    w0: complex
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w0", complex(self.w0))
        w = np.array(self.w, dtype=complex)
        if w.shape != (3,):
            raise ValueError(f"Pauli vector must have 3 components, got shape {w.shape}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    def to_matrix(self) -> np.ndarray:
        return to_matrix(self)

    def __add__(self, other):
        return QubitElement(self.w0 + other.w0, self.w + other.w)

    def __sub__(self, other):
        return QubitElement(self.w0 - other.w0, self.w - other.w)

    def __mul__(self, c):
        return QubitElement(c * self.w0, c * self.w)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"QubitElement(w0={self.w0!r}, w={self.w.tolist()!r})"


def identity() -> QubitElement:
    return QubitElement(1.0, np.zeros(3))


def pauli(k: int) -> QubitElement:
    """sigma_k for k in {1, 2, 3}."""
    w = np.zeros(3, dtype=complex)
    w[k - 1] = 1.0
    return QubitElement(0.0, w)


def from_matrix(m) -> QubitElement:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    w0 = 0.5 * (m[0, 0] + m[1, 1])
    w1 = 0.5 * (m[0, 1] + m[1, 0])
    w2 = 0.5j * (m[0, 1] - m[1, 0])
    w3 = 0.5 * (m[0, 0] - m[1, 1])
    return QubitElement(w0, [w1, w2, w3])


def to_matrix(x: QubitElement) -> np.ndarray:
    return x.w0 * IDENTITY2 + np.einsum("k,kij->ij", x.w, SIGMA)


def normalized_trace(x: QubitElement) -> complex:
    return x.w0


def multiply(x: QubitElement, y: QubitElement) -> QubitElement:
    w0 = x.w0 * y.w0 + np.sum(x.w * y.w)
    w = x.w0 * y.w + y.w0 * x.w + 1j * cross(x.w, y.w)
    return QubitElement(w0, w)


def adjoint(x: QubitElement) -> QubitElement:
    return QubitElement(np.conj(x.w0), np.conj(x.w))


def is_self_adjoint(x: QubitElement, tol: float = TOL.predicate) -> bool:
    return abs(x.w0.imag) <= tol and float(np.max(np.abs(x.w.imag))) <= tol


def is_positive(x: QubitElement, tol: float = TOL.predicate) -> bool:
    """Positivity test ``||w|| <= w0`` for a self-adjoint element."""
    if not is_self_adjoint(x, tol):
        return False
    return norm(x.w.real) <= x.w0.real + tol


def is_positive_by_spectrum(x: QubitElement, tol: float = TOL.predicate) -> bool:
    """Reference test: self-adjoint and smallest eigenvalue of the matrix >= -tol."""
    m = to_matrix(x)
    if float(np.max(np.abs(m - m.conj().T))) > tol:
        return False
    return float(herm_eig(0.5 * (m + m.conj().T))[0]) >= -tol


def is_normal(x: QubitElement, tol: float = TOL.predicate) -> bool:
    """Normal iff ``w cross conj(w)`` vanishes.

    The literal condition ``[w, conj w] = [conj w, w]`` is equivalent, because the
    cross product is antisymmetric.
    """
    return norm(cross(x.w, np.conj(x.w))) <= tol
