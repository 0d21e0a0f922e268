import numpy as np
import pytest

from ksqubit.linalg import SIGMA
from ksqubit.pauli import (
    QubitElement,
    adjoint,
    from_matrix,
    identity,
    is_normal,
    is_positive,
    is_positive_by_spectrum,
    is_self_adjoint,
    multiply,
    normalized_trace,
    pauli,
    to_matrix,
)


def random_element(rng, self_adjoint=False):
    if self_adjoint:
        return QubitElement(rng.normal(), rng.normal(size=3))
    return QubitElement(complex(*rng.normal(size=2)), rng.normal(size=3) + 1j * rng.normal(size=3))


def close(x, y, tol=1e-13):
    return abs(x.w0 - y.w0) <= tol and np.abs(x.w - y.w).max() <= tol


def test_from_matrix_identity_and_sigma2():
    x = from_matrix(np.eye(2))
    assert x.w0 == 1 and np.all(x.w == 0)
    y = from_matrix(SIGMA[1])
    assert y.w0 == 0 and np.array_equal(y.w, [0, 1, 0])


def test_from_matrix_general():
    m = np.array([[1, 2], [3, 4]], dtype=complex)
    x = from_matrix(m)
    # reconstruction oracle: m = w0 1 + w.sigma
    assert np.abs(to_matrix(x) - m).max() == 0
    assert x.w0 == 2.5
    assert np.allclose(x.w, [2.5, -0.5j, -1.5], atol=0)


def test_roundtrip_random():
    rng = np.random.default_rng(1)
    for _ in range(200):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.abs(to_matrix(from_matrix(m)) - m).max() < 1e-14
        x = random_element(rng)
        assert close(from_matrix(to_matrix(x)), x, 1e-14)


def test_pauli_relations():
    s1s2 = multiply(pauli(1), pauli(2))
    assert close(s1s2, QubitElement(0, [0, 0, 1j]))
    for k in (1, 2, 3):
        assert close(multiply(pauli(k), pauli(k)), identity())


def test_multiply_identity():
    rng = np.random.default_rng(2)
    x = random_element(rng)
    assert close(multiply(x, identity()), x, 0)
    assert close(multiply(identity(), x), x, 0)


def test_adjoint_product_example():
    # x = (1, 1, i).sigma with w0 = 0: x^* x = ||w||^2 1 - i [w, conj w].sigma = 3 + (-2, 2, 0).sigma
    x = QubitElement(0, [1, 1, 1j])
    got = multiply(adjoint(x), x)
    assert close(got, QubitElement(3, [-2, 2, 0]))
    assert np.abs(to_matrix(got) - to_matrix(x).conj().T @ to_matrix(x)).max() < 1e-14


def test_multiply_matches_matrix_product():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(1000):
        x, y = random_element(rng), random_element(rng)
        worst = max(worst, np.abs(to_matrix(multiply(x, y)) - to_matrix(x) @ to_matrix(y)).max())
    assert worst <= 1e-12


def test_adjoint_examples():
    assert close(adjoint(pauli(2)), pauli(2))
    assert close(adjoint(QubitElement(1j, [0, 0, 0])), QubitElement(-1j, [0, 0, 0]))
    assert close(adjoint(QubitElement(0, [1, 1, 1j])), QubitElement(0, [1, 1, -1j]))


def test_adjoint_reverses_products():
    rng = np.random.default_rng(4)
    for _ in range(100):
        x, y = random_element(rng), random_element(rng)
        assert close(adjoint(multiply(x, y)), multiply(adjoint(y), adjoint(x)), 1e-12)
        assert close(adjoint(adjoint(x)), x, 0)
        assert np.abs(to_matrix(adjoint(x)) - to_matrix(x).conj().T).max() < 1e-14


def test_self_adjoint_iff_real_coordinates():
    rng = np.random.default_rng(5)
    for _ in range(100):
        x = random_element(rng)
        m = to_matrix(x)
        assert is_self_adjoint(x) == (np.abs(m - m.conj().T).max() <= 1e-10)
        h = random_element(rng, self_adjoint=True)
        assert is_self_adjoint(h)


def test_normalized_trace():
    rng = np.random.default_rng(6)
    for _ in range(100):
        x = random_element(rng)
        assert normalized_trace(x) == x.w0
        assert abs(np.trace(to_matrix(x)) / 2 - x.w0) < 1e-15


@pytest.mark.parametrize(
    "x,expected",
    [
        (identity(), True),
        (QubitElement(1, [0.6, 0, 0.8]), True),
        (pauli(3), False),
        (QubitElement(1j, [0, 0, 0]), False),
    ],
)
def test_is_positive_examples(x, expected):
    assert is_positive(x) is expected
    assert is_positive_by_spectrum(x) is expected


def test_is_positive_agrees_with_spectrum():
    rng = np.random.default_rng(7)
    disagreements = 0
    for _ in range(1000):
        w = rng.normal(size=3)
        w0 = np.linalg.norm(w) * rng.uniform(0.5, 1.5)
        x = QubitElement(w0, w)
        disagreements += is_positive(x) != is_positive_by_spectrum(x)
    assert disagreements == 0


def test_is_normal_examples():
    rng = np.random.default_rng(8)
    assert is_normal(random_element(rng, self_adjoint=True))
    assert not is_normal(QubitElement(0, [1, 1, 1j]))
    assert not is_normal(QubitElement(0, np.array([1, 1j, 0]) / np.sqrt(2)))


def test_is_normal_agrees_with_commutator():
    rng = np.random.default_rng(9)
    for _ in range(300):
        if rng.uniform() < 0.3:
            # phase times a real vector is normal
            x = QubitElement(complex(*rng.normal(size=2)), np.exp(1j * rng.uniform(0, 6)) * rng.normal(size=3))
        else:
            x = random_element(rng)
        m = to_matrix(x)
        comm = np.abs(m @ m.conj().T - m.conj().T @ m).max()
        assert is_normal(x, 1e-9) == (comm <= 1e-9)
