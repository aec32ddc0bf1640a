import itertools

import numpy as np
import pytest

from chshpair.families import ghz_noise, max_entangled, named_state
from chshpair.gte import (
    gte_bound,
    gte_report,
    gte_xyz,
    mixed_gte_test,
    pure_gte_concurrence,
    pure_gte_test,
)
from chshpair.qmat import QState
from conftest import random_pure

GHZ = named_state("ghz")
W = named_state("w")
ZERO_BELL = QState.pure(np.kron([1, 0], np.array([1, 0, 0, 1]) / np.sqrt(2)), (2, 2, 2))


def permute_parties(s, perm):
    n = s.nparties
    dims = tuple(s.dims[k] for k in perm)
    if s.is_pure:
        return QState(dims, s.body.reshape(s.dims).transpose(perm).reshape(-1))
    body = s.body.reshape(s.dims + s.dims).transpose(list(perm) + [k + n for k in perm])
    return QState(dims, body.reshape(s.dim, s.dim))


def test_xyz_examples():
    assert np.allclose(gte_xyz(GHZ), (4, 4, 4), atol=1e-12)
    assert np.allclose(gte_xyz(ZERO_BELL), (0, 4, 4), atol=1e-12)
    assert gte_xyz(QState.mixed(np.eye(8) / 8, (2, 2, 2))) == (0, 0, 0)


def test_xyz_requires_three_parties():
    with pytest.raises(ValueError):
        gte_xyz(max_entangled(2, 2))
    with pytest.raises(ValueError):
        gte_xyz(max_entangled(2, 4))


def test_pure_test_examples():
    assert pure_gte_test(GHZ)
    assert pure_gte_test(W)
    assert not pure_gte_test(ZERO_BELL)
    with pytest.raises(ValueError):
        pure_gte_test(ghz_noise(2, 0.9))


def test_pure_test_matches_marginal_purities(rng):
    for _ in range(30):
        s = random_pure((2, 3, 2), rng)
        assert pure_gte_test(s)
        a = random_pure((2,), rng).body
        bc = random_pure((3, 2), rng).body
        assert not pure_gte_test(QState.pure(np.kron(a, bc), (2, 3, 2)))


def test_mixed_test_examples():
    det, total = mixed_gte_test(GHZ)
    assert det and abs(total - 12) < 1e-12
    det, total = mixed_gte_test(ZERO_BELL)
    assert not det and abs(total - 8) < 1e-12
    x = 0.85
    y = (1 + x) / 2
    closed = 3 * (8 * x**2 / y**2 - 4)
    det, total = mixed_gte_test(ghz_noise(2, x))
    assert det and abs(total - closed) < 1e-12 and abs(total - 8.2659) < 1e-4


def test_sum_bound_fails_for_qutrit_cut_mixture():
    # terms on disjoint local levels: each projected pair sees one term, renormalized
    e = np.eye(3)
    ket = lambda a, b, c: np.kron(np.kron(e[a], e[b]), e[c])
    first = (ket(0, 0, 0) + ket(0, 1, 1)) / np.sqrt(2)
    second = (ket(1, 2, 1) + ket(2, 2, 2)) / np.sqrt(2)
    for w in (0.1, 0.5, 0.9):
        rho = w * np.outer(first, first) + (1 - w) * np.outer(second, second)
        det, total = mixed_gte_test(QState.mixed(rho, (3, 3, 3)))
        assert det and abs(total - 12) < 1e-9


def test_gte_concurrence_examples():
    assert abs(pure_gte_concurrence(GHZ) - 1 / np.sqrt(2)) < 1e-12
    assert abs(pure_gte_concurrence(W) - 2 / 3) < 1e-12
    assert pure_gte_concurrence(ZERO_BELL) < 1e-7
    with pytest.raises(ValueError):
        pure_gte_concurrence(ghz_noise(2, 0.5))


def test_bound_examples():
    assert abs(gte_bound(GHZ) - 1 / (3 * np.sqrt(2))) < 1e-12
    assert abs(gte_bound(QState.mixed(np.eye(8) / 8, (2, 2, 2))) + (2 / 3) * np.sqrt(0.5)) < 1e-12
    with pytest.raises(ValueError):
        gte_bound(random_pure((2, 3, 2), np.random.default_rng(0)))


def test_bound_crossing_on_noisy_ghz():
    # each partition carries a single contributing pair: sum y^2 q = 8 x^2 - (1 + x)^2
    x0 = (2 + np.sqrt(4 + 4 * 7 * 25 / 9)) / 14
    assert abs(x0 - 0.788793) < 1e-6
    assert gte_bound(ghz_noise(2, x0 - 1e-6)) < 0 < gte_bound(ghz_noise(2, x0 + 1e-6))


@pytest.mark.parametrize("d", [2, 3])
def test_bound_below_gte_concurrence(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(100):
        s = random_pure((d, d, d), rng)
        assert gte_bound(s) <= pure_gte_concurrence(s) + 1e-8


def test_party_permutation_covariance(rng):
    for _ in range(5):
        s = random_pure((2, 2, 2), rng)
        xyz = gte_xyz(s)
        for perm in itertools.permutations(range(3)):
            t = permute_parties(s, perm)
            assert np.allclose(gte_xyz(t), [xyz[k] for k in perm], atol=1e-10)


@pytest.mark.parametrize("d", [2, 3])
def test_noisy_ghz_symmetry(d):
    for x in (0.3, 0.7, 0.95):
        a, b, c = gte_xyz(ghz_noise(d, x))
        assert abs(a - b) < 1e-9 and abs(b - c) < 1e-9


def test_report_fields():
    r = gte_report(GHZ)
    assert r.pure_gte and r.mixed_gte_detected
    assert abs(r.sum - 12) < 1e-12 and abs(r.bound - 1 / (3 * np.sqrt(2))) < 1e-12
    assert r.bound <= r.pure_gte_concurrence + 1e-8
    r = gte_report(ghz_noise(2, 0.5))
    assert r.pure_gte is None and r.pure_gte_concurrence is None and not r.mixed_gte_detected
    assert 0 <= r.sum <= 12
    r = gte_report(random_pure((2, 3, 2), np.random.default_rng(3)))
    assert r.bound is None
