import numpy as np
import pytest
from scipy.stats import unitary_group

from chshpair.qmat import QState, kron


def random_pure(dims, rng):
    n = int(np.prod(dims))
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return QState.pure(v / np.linalg.norm(v), dims)


def random_density(n, rng, rank=None):
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_product_unitary(dims, rng):
    return kron(*[unitary_group.rvs(d, random_state=rng) for d in dims])


def conjugate(s, u):
    if s.is_pure:
        return QState(s.dims, u @ s.body)
    return QState(s.dims, u @ s.body @ u.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
