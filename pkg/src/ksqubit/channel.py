"""Trace-preserving qubit maps in the Pauli picture.

A trace-preserving linear map acts as

    Phi(w0 1 + w.sigma) = w0 1 + (w0 t + T w).sigma

with a real 3x3 transfer matrix ``T`` and translation ``t``; the map is unital
exactly when ``t = 0``.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    IDENTITY2,
    LinAlgInputError,
    is_unitary,
    polar_rotation,
    rotation_from_unitary,
    so3_to_su2,
    svd3,
    sym_eig3,
)
from .pauli import QubitElement, from_matrix, to_matrix


class NonUnitalMapError(ValueError):
    """A classifier received a map with non-zero translation."""


class ChannelFormatError(ValueError):
    """Malformed channel document."""


@dataclass(frozen=True, eq=False)
class TransferMap:
    T: np.ndarray
    t: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        T = np.array(self.T, dtype=float)
        t = np.array(self.t, dtype=float)
        if T.shape != (3, 3) or t.shape != (3,):
            raise ValueError("transfer matrix must be 3x3 and translation a 3-vector")
        if not (np.all(np.isfinite(T)) and np.all(np.isfinite(t))):
            raise ValueError("transfer map entries must be finite")
        T.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "t", t)

    @property
    def is_unital(self) -> bool:
        return not np.any(self.t)

    @property
    def is_diagonal(self) -> bool:
        return not np.any(self.T - np.diag(np.diag(self.T)))

    def __call__(self, x: QubitElement) -> QubitElement:
        return apply(self, x)

    def __repr__(self):
        name = type(self).__name__
        if self.is_unital:
            return f"{name}(T={self.T.tolist()!r})"
        return f"{name}(T={self.T.tolist()!r}, t={self.t.tolist()!r})"


class BistochasticMap(TransferMap):
    """Unital trace-preserving map, ``Phi(w0 1 + w.sigma) = w0 1 + (T w).sigma``."""

    def __init__(self, T):
        super().__init__(T, np.zeros(3))


@dataclass(frozen=True)
class DiagonalParams:
    l1: float
    l2: float
    l3: float

    def as_tuple(self):
        return (self.l1, self.l2, self.l3)

    def to_map(self) -> BistochasticMap:
        return BistochasticMap(np.diag(self.as_tuple()))


def diagonal_map(l1, l2=None, l3=None) -> BistochasticMap:
    """``Phi_(l1, l2, l3)``; accepts three scalars or one 3-sequence."""
    if l2 is None and l3 is None:
        l1, l2, l3 = l1
    return DiagonalParams(float(l1), float(l2), float(l3)).to_map()


def require_unital(phi: TransferMap) -> None:
    if not phi.is_unital:
        raise NonUnitalMapError("map is not unital (translation t != 0)")


def apply(phi: TransferMap, x: QubitElement) -> QubitElement:
    return QubitElement(x.w0, x.w0 * phi.t + phi.T @ x.w)


def apply_matrix(phi: TransferMap, m) -> np.ndarray:
    return to_matrix(apply(phi, from_matrix(m)))


def convex_combine(phi: TransferMap, psi: TransferMap, lam: float) -> BistochasticMap:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"convex weight must lie in [0, 1], got {lam}")
    require_unital(phi)
    require_unital(psi)
    return BistochasticMap(lam * phi.T + (1.0 - lam) * psi.T)


def conjugate_by_unitary(phi: TransferMap, u, v) -> BistochasticMap:
    """Transfer matrix of ``x -> U Phi(V x V^*) U^*``, namely ``R_U T R_V``."""
    require_unital(phi)
    if not (is_unitary(u) and is_unitary(v)):
        raise LinAlgInputError("conjugating matrices must be unitary")
    return BistochasticMap(rotation_from_unitary(u) @ phi.T @ rotation_from_unitary(v))


def conjugate_by_unitary_direct(phi: TransferMap, u, v, m) -> np.ndarray:
    """``U Phi(V m V^*) U^*`` evaluated with 2x2 matrices."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    inner = v @ np.asarray(m, dtype=complex) @ v.conj().T
    return u @ apply_matrix(phi, inner) @ u.conj().T


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``Phi(x) = outer . Phi_D(inner x inner^*) . outer^*``."""

    outer: np.ndarray
    params: DiagonalParams
    inner: np.ndarray
    single_unitary: bool
    reconstruction_error: float

    def transfer_matrix(self) -> np.ndarray:
        return rotation_from_unitary(self.outer) @ np.diag(self.params.as_tuple()) @ rotation_from_unitary(
            self.inner
        )

    def to_map(self) -> BistochasticMap:
        return conjugate_by_unitary(self.params.to_map(), self.outer, self.inner)


def canonical_decompose(phi: TransferMap) -> Decomposition:
    """Reduce a unital map to a diagonal one sandwiched between two unitaries.

    ``T = R S`` (polar), ``S = V D V^T`` (eigen), so ``T = (R V) D V^T``.  The
    diagonal is ordered by decreasing ``|lambda|`` with signs kept; the permutation
    goes into the rotations.  ``single_unitary`` is set when the inner unitary is
    the adjoint of the outer one up to sign, i.e. ``Phi(x) = U Phi_D(U^* x U) U^*``.
    Already-diagonal inputs return the identity sandwich.
    """
    require_unital(phi)
    T = phi.T
    if phi.is_diagonal:
        d = DiagonalParams(*(float(x) for x in np.diag(T)))
        return Decomposition(IDENTITY2.copy(), d, IDENTITY2.copy(), True, 0.0)
    r, s = polar_rotation(T)
    v, d = sym_eig3(s)
    order = np.argsort(-np.abs(d), kind="stable")
    d = d[order]
    v = v[:, order]
    if np.linalg.det(v) < 0:
        v[:, 2] = -v[:, 2]
    outer_rot = r @ v
    inner_rot = v.T
    outer = so3_to_su2(outer_rot)
    inner = so3_to_su2(inner_rot)
    params = DiagonalParams(*(float(x) for x in d))
    recon = rotation_from_unitary(outer) @ np.diag(d) @ rotation_from_unitary(inner)
    err = float(np.max(np.abs(recon - T)))
    adj = outer.conj().T
    single = bool(min(np.max(np.abs(inner - adj)), np.max(np.abs(inner + adj))) <= 1e-9)
    return Decomposition(outer, params, inner, single, err)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    # Haar measure via QR of a complex Ginibre matrix
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_bistochastic(seed, mode: str = "contractive") -> BistochasticMap:
    """Deterministic random unital map.

    ``diagonal``: entries uniform in [-1, 1].  ``contractive``: Gaussian matrix
    rescaled, when needed, so that its largest singular value is at most 1.
    ``general``: entries uniform in [-1, 1], not necessarily contractive.
    """
    rng = np.random.default_rng(seed)
    if mode == "diagonal":
        return BistochasticMap(np.diag(rng.uniform(-1.0, 1.0, 3)))
    if mode == "contractive":
        T = rng.standard_normal((3, 3)) * rng.uniform(0.1, 1.0)
        smax = svd3(T)[1][0]
        if smax > 1.0:
            T = T / smax
        return BistochasticMap(T)
    if mode == "general":
        return BistochasticMap(rng.uniform(-1.0, 1.0, (3, 3)))
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# channel documents


def format_number(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("cannot serialise non-finite number")
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON encoder that writes floats with 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def channel_to_dict(phi: TransferMap) -> dict:
    require_unital(phi)
    if phi.is_diagonal:
        return {"kind": "diagonal", "lambdas": [float(x) for x in np.diag(phi.T)]}
    return {"kind": "general", "t_matrix": [[float(x) for x in row] for row in phi.T]}


def dump_channel(phi: TransferMap) -> str:
    return dumps(channel_to_dict(phi)) + "\n"


def _real(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ChannelFormatError(f"{what} must be a real number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise ChannelFormatError(f"{what} must be finite")
    return x


def channel_from_dict(doc) -> BistochasticMap:
    if not isinstance(doc, dict):
        raise ChannelFormatError("channel document must be a JSON object")
    kind = doc.get("kind")
    if kind == "diagonal":
        lams = doc.get("lambdas")
        if not isinstance(lams, list) or len(lams) != 3:
            raise ChannelFormatError("'lambdas' must be a list of three numbers")
        return diagonal_map([_real(x, "lambda") for x in lams])
    if kind == "general":
        rows = doc.get("t_matrix")
        if not isinstance(rows, list) or len(rows) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in rows):
            raise ChannelFormatError("'t_matrix' must be a 3x3 row-major list")
        if "t" in doc and any(_real(x, "t") != 0.0 for x in doc["t"]):
            raise NonUnitalMapError("channel document has a non-zero translation")
        return BistochasticMap([[_real(x, "t_matrix entry") for x in r] for r in rows])
    raise ChannelFormatError(f"unknown channel kind {kind!r}")


def load_channel(text: str) -> BistochasticMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelFormatError(f"invalid JSON: {exc}") from exc
    return channel_from_dict(doc)
