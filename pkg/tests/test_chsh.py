import numpy as np
import pytest

from chshpair.chsh import bell_oracle_gamma, correlation_matrix, horodecki_gamma
from chshpair.qmat import kron
from chshpair.sogen import PAULI
from conftest import random_density, random_product_unitary

BELL = np.outer([1, 0, 0, 1], [1, 0, 0, 1]) / 2
KET00 = np.diag([1.0, 0, 0, 0])


def correlation_by_trace(rho):
    # oracle: one explicit trace per entry
    return np.array([[np.trace(rho @ kron(PAULI[k], PAULI[l])).real for l in range(3)] for k in range(3)])


def isotropic2(x):
    return x * BELL + (1 - x) * np.eye(4) / 4


def test_correlation_examples():
    assert np.abs(correlation_by_trace(BELL) - np.diag([1, -1, 1])).max() < 1e-15
    assert np.abs(correlation_matrix(BELL) - np.diag([1, -1, 1])).max() < 1e-15
    assert np.abs(correlation_matrix(np.eye(4) / 4)).max() == 0
    assert np.abs(correlation_by_trace(KET00) - np.diag([0, 0, 1])).max() < 1e-15
    assert np.abs(correlation_matrix(KET00) - np.diag([0, 0, 1])).max() < 1e-15


def test_correlation_matches_trace_oracle(rng):
    for _ in range(50):
        rho = random_density(4, rng)
        assert np.abs(correlation_matrix(rho) - correlation_by_trace(rho)).max() < 1e-12
        x = correlation_matrix(rho)
        assert np.abs(x).max() <= 1 + 1e-12
        assert np.linalg.svd(x, compute_uv=False).max() <= 1 + 1e-8


def test_wrong_dimension_rejected():
    with pytest.raises(ValueError):
        correlation_matrix(np.eye(3) / 3)
    with pytest.raises(ValueError):
        horodecki_gamma(np.eye(9) / 9)


def test_horodecki_examples():
    r = horodecki_gamma(BELL)
    assert abs(r.gamma - 2 * np.sqrt(2)) < 1e-12 and abs(r.q - 4) < 1e-12
    r = horodecki_gamma(KET00)
    assert abs(r.gamma - 2) < 1e-12 and r.q == 0
    r = horodecki_gamma(isotropic2(1 / np.sqrt(2)))
    assert abs(r.gamma - 2) < 1e-12 and r.q < 1e-12


def test_bell_diagonal_closed_form(rng):
    for t in rng.uniform(-1 / 3, 1, size=20):
        # Werner-type state with correlations diag(t, -t, t)
        r = horodecki_gamma(isotropic2(t) if t >= 0 else t * BELL + (1 - t) * np.eye(4) / 4)
        assert abs(r.gamma - 2 * np.sqrt(2) * abs(t)) < 1e-12


def test_local_unitary_invariance(rng):
    for _ in range(30):
        rho = random_density(4, rng)
        u = random_product_unitary((2, 2), rng)
        a, b = horodecki_gamma(rho), horodecki_gamma(u @ rho @ u.conj().T)
        assert abs(a.gamma - b.gamma) < 1e-9


def test_violation_criterion_consistency(rng):
    for _ in range(100):
        rho = random_density(4, rng, rank=int(rng.integers(1, 3)))
        x = correlation_by_trace(rho)
        tau = np.sort(np.linalg.eigvalsh(x.T @ x))
        r = horodecki_gamma(rho)
        assert (r.q > 0) == (tau[1] + tau[2] > 1)
        assert 0 <= r.gamma <= 2 * np.sqrt(2) + 1e-8 and 0 <= r.q <= 4 + 1e-8


def test_oracle_examples():
    assert abs(bell_oracle_gamma(BELL, resolution=48) - 2 * np.sqrt(2)) < 1e-3
    assert abs(bell_oracle_gamma(np.eye(4) / 4)) < 1e-9


def test_oracle_rejects_coarse_grid():
    with pytest.raises(ValueError):
        bell_oracle_gamma(BELL, resolution=12)


def test_oracle_agrees_with_closed_form(rng):
    for _ in range(20):
        rho = random_density(4, rng, rank=int(rng.integers(1, 5)))
        g = horodecki_gamma(rho).gamma
        o = bell_oracle_gamma(rho, resolution=48)
        assert o <= g + 1e-6
        assert g - o < 1e-4


def test_oracle_value_is_attained():
    # explicit textbook settings reach 2 sqrt 2 on the Bell state
    x = correlation_matrix(BELL)
    b1, b2 = np.array([1, 0, 0]), np.array([0, 0, 1])
    a1 = x @ (b1 + b2) / np.linalg.norm(x @ (b1 + b2))
    a2 = x @ (b1 - b2) / np.linalg.norm(x @ (b1 - b2))

    def obs(v):
        return np.tensordot(v, PAULI, 1)

    op = kron(obs(a1), obs(b1) + obs(b2)) + kron(obs(a2), obs(b1) - obs(b2))
    assert abs(np.trace(op @ BELL).real - 2 * np.sqrt(2)) < 1e-12
