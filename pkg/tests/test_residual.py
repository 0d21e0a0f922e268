import math

import numpy as np
import pytest

from ksqubit.channel import BistochasticMap, DiagonalParams, NonUnitalMapError, TransferMap, diagonal_map, random_bistochastic
from ksqubit.classification import (
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
from ksqubit.pauli import QubitElement, from_matrix, is_positive, to_matrix


def random_w(rng):
    return rng.normal(size=3) + 1j * rng.normal(size=3)


def residual_by_matrices(phi, w):
    # independent oracle: smallest eigenvalue of Phi(x^* x) - Phi(x)^* Phi(x) for x = w.sigma,
    # which equals the residual (eigenvalues of a0 + a.sigma are a0 -+ ||a|| for real a0, a)
    x = to_matrix(QubitElement(0, w))
    lhs = to_matrix(phi(from_matrix(x.conj().T @ x)))
    px = to_matrix(phi(from_matrix(x)))
    return float(np.linalg.eigvalsh(lhs - px.conj().T @ px)[0])


def test_residual_identity_is_zero():
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert abs(ks_residual(diagonal_map(1, 1, 1), random_w(rng))) < 1e-12


def test_residual_zero_map_is_norm_squared():
    rng = np.random.default_rng(1)
    for _ in range(20):
        w = random_w(rng)
        assert abs(ks_residual(diagonal_map(0, 0, 0), w) - np.vdot(w, w).real) < 1e-12


def test_residual_transposition_example():
    phi = diagonal_map(1, -1, 1)
    w = np.array([1, 1, 1j])
    gap, margin = ks_residual_terms(phi, w)
    assert margin == 0.0
    assert abs(gap - 4 * math.sqrt(2)) < 1e-12
    assert abs(ks_residual(phi, w) + 4 * math.sqrt(2)) < 1e-12
    assert abs(ks_residual(phi, w / math.sqrt(3)) + 4 * math.sqrt(2) / 3) < 1e-12


def test_residual_matches_matrix_oracle():
    rng = np.random.default_rng(2)
    for seed in range(200):
        phi = random_bistochastic(seed, "general")
        w = random_w(rng)
        assert abs(ks_residual(phi, w) - residual_by_matrices(phi, w)) < 1e-10


def test_residual_homogeneity_and_phase():
    rng = np.random.default_rng(3)
    for seed in range(100):
        phi = random_bistochastic(seed, "general")
        w = random_w(rng)
        c = complex(*rng.normal(size=2))
        r = ks_residual(phi, w)
        assert abs(ks_residual(phi, c * w) - abs(c) ** 2 * r) <= 1e-10 * max(1.0, abs(abs(c) ** 2 * r))
        theta = rng.uniform(0, 2 * math.pi)
        assert abs(ks_residual(phi, np.exp(1j * theta) * w) - r) <= 1e-12 * max(1.0, abs(r))


def test_residual_real_vectors():
    rng = np.random.default_rng(4)
    for seed in range(50):
        phi = random_bistochastic(seed, "general")
        w = rng.normal(size=3)
        assert abs(ks_residual(phi, w) - (w @ w - np.linalg.norm(phi.T @ w) ** 2)) < 1e-12


def test_real_form_matches_complex_form():
    rng = np.random.default_rng(5)
    Ts = np.stack([random_bistochastic(s, "general").T for s in range(64)])
    w = rng.normal(size=(64, 3)) + 1j * rng.normal(size=(64, 3))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    batch = ks_residual_real(Ts, w.real, w.imag)
    for k in range(64):
        assert abs(batch[k] - ks_residual(BistochasticMap(Ts[k]), w[k])) < 1e-12
        single = ks_residual_real(Ts[k], w[k].real, w[k].imag)
        assert single == batch[k]


def test_diagonal_expansion_matches_residual():
    rng = np.random.default_rng(6)
    for _ in range(300):
        lams = rng.uniform(-1, 1, 3)
        w = random_w(rng)
        d = DiagonalParams(*lams)
        assert abs(residual_diagonal_expansion(d, w) - ks_residual(d.to_map(), w)) < 1e-10


def test_example_witness_inequality():
    lhs, rhs = example_witness_inequality(DiagonalParams(1, -1, 1))
    assert abs(lhs - 4 * math.sqrt(2)) < 1e-12 and rhs == 0.0
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = DiagonalParams(*rng.uniform(-1, 1, 3))
        lhs, rhs = example_witness_inequality(d)
        assert abs((rhs - lhs) - ks_residual(d.to_map(), [1, 1, 1j])) < 1e-12


def test_residual_rejects_non_unital():
    with pytest.raises(NonUnitalMapError):
        ks_residual(TransferMap(np.eye(3), [0.1, 0, 0]), [1, 0, 0])


# positivity and contraction -------------------------------------------------------

@pytest.mark.parametrize(
    "lams,expected",
    [((1, -1, 1), True), ((1.2, 0, 0), False), ((0, 0, 0), True), ((1, 1, 1), True), ((-1, -1, -1), True)],
)
def test_positive_and_contraction_examples(lams, expected):
    phi = diagonal_map(*lams)
    assert check_positive(phi) is expected
    assert check_ks_contraction(phi) is expected


def test_contraction_row_norm():
    t = np.zeros((3, 3))
    t[0] = np.array([0.6, 0.6, 0.5]) * 1.1 / np.linalg.norm([0.6, 0.6, 0.5])
    assert not check_ks_contraction(BistochasticMap(t))


def test_positive_agrees_with_sampling():
    rng = np.random.default_rng(8)
    for seed in range(100):
        phi = random_bistochastic(seed, "general")
        # extreme positive elements: pure states 1 + n.sigma, |n| = 1
        n = rng.normal(size=(200, 3))
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        sampled = all(is_positive(phi(QubitElement(1.0, v)), 1e-12) for v in n)
        if check_positive(phi):
            assert sampled
        else:
            # the top singular direction is a violated pure state
            w, _ = contraction_witness(phi)
            assert not is_positive(phi(QubitElement(1.0, w.real)))


def test_contraction_witness():
    phi = diagonal_map(1.1, 0, 0)
    w, r = contraction_witness(phi)
    assert np.allclose(w, [1, 0, 0]) and abs(r - (1 - 1.21)) < 1e-12
    assert abs(ks_residual(phi, w) - r) < 1e-12


# sufficient conditions -----------------------------------------------------

@pytest.mark.parametrize(
    "lams,expected",
    [((1, 1, 1), True), ((1, -1, 1), False), ((-0.4, -0.4, -0.4), True), ((-0.45, -0.45, -0.45), False)],
)
def test_sufficient_examples(lams, expected):
    assert check_ks_sufficient_diagonal(DiagonalParams(*lams)) is expected


def test_sufficient_arithmetic_at_minus_point_four():
    s = 0.16
    assert abs((1 + s) * (3 + 2 * s - s) - 3.6656) < 1e-12
    assert abs(4 * (1 - 0.064) - 3.744) < 1e-12


def test_sufficient_requires_contraction_outside_cube():
    d = DiagonalParams(1.1, 1.1, 1.1)
    assert not check_ks_sufficient_diagonal(d)
    assert check_ks_sufficient_diagonal(d, require_contraction=False)
    assert not check_positive(d.to_map())


def test_llm_window():
    # (lam, lam, lam) passes the four inequalities exactly on [1 - sqrt 2, 1]
    edge = 1 - math.sqrt(2)
    assert check_ks_sufficient_diagonal(DiagonalParams(edge + 1e-9, edge + 1e-9, edge + 1e-9))
    assert not check_ks_sufficient_diagonal(DiagonalParams(edge - 1e-6, edge - 1e-6, edge - 1e-6))
