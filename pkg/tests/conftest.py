import numpy as np
import pytest
from hypothesis import strategies as st

from vqutrit import SystemParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def fig2_params():
    return SystemParams(gamma0=1.0, lam=0.8, omega0=1.0, theta=0.5, n_atoms=1)


params_strategy = st.builds(
    SystemParams,
    gamma0=st.floats(0.0, 5.0),
    lam=st.floats(0.05, 3.0),
    omega0=st.just(1.0),
    theta=st.floats(0.0, 1.0),
    n_atoms=st.integers(1, 12),
)


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, dim, rank=None):
    rank = rank or dim
    x = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real
