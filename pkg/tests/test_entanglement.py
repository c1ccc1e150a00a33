import numpy as np
import pytest

from vqutrit import (NumericalError, ParameterError, SystemParams, hermitian_eigenvalues, negativity,
                     partial_transpose)
from vqutrit.entanglement import basis_ket, maximally_entangled
from vqutrit.experiments import evolved_state

from conftest import random_density, random_unitary


# --- eigensolver -------------------------------------------------------------

def test_scaled_identity():
    spectrum = hermitian_eigenvalues(np.eye(9) / 9)
    np.testing.assert_allclose(spectrum.eigenvalues, np.full(9, 1 / 9), atol=1e-15)


def test_single_projector():
    m = np.zeros((9, 9))
    m[-1, -1] = 1
    np.testing.assert_allclose(hermitian_eigenvalues(m).eigenvalues, [0] * 8 + [1], atol=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_recovers_constructed_spectrum(seed):
    rng = np.random.default_rng(seed)
    d = np.sort(rng.normal(size=9))
    if seed % 3 == 0:
        d[2:5] = d[2]  # degenerate cluster
    q = random_unitary(rng, 9)
    m = q @ np.diag(d) @ q.conj().T
    spectrum = hermitian_eigenvalues(m)
    np.testing.assert_allclose(spectrum.eigenvalues, np.sort(d), atol=1e-8)
    scale = np.linalg.norm(m)
    for lam, v in zip(spectrum.eigenvalues, spectrum.eigenvectors.T):
        assert np.linalg.norm(m @ v - lam * v) <= 1e-8 * scale
    np.testing.assert_allclose(spectrum.eigenvectors.conj().T @ spectrum.eigenvectors, np.eye(9), atol=1e-12)
    assert abs(spectrum.eigenvalues.sum() - np.trace(m).real) < 1e-10


def test_matches_lapack_on_random_hermitian(rng):
    for _ in range(20):
        x = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        m = x + x.conj().T
        np.testing.assert_allclose(hermitian_eigenvalues(m).eigenvalues, np.linalg.eigvalsh(m), atol=1e-10)


def test_rejects_non_hermitian():
    m = np.eye(3, dtype=complex)
    m[0, 1] = 1e-3
    with pytest.raises(ParameterError):
        hermitian_eigenvalues(m)


def test_sweep_cap_reported():
    x = np.arange(81.0).reshape(9, 9)
    with pytest.raises(NumericalError):
        hermitian_eigenvalues(x + x.T, max_sweeps=1)


# --- partial transpose ---------------------------------------------------------

def test_partial_transpose_on_products(rng):
    s, t = random_density(rng, 3), random_density(rng, 3)
    np.testing.assert_allclose(partial_transpose(np.kron(s, t), 1), np.kron(s.T, t), atol=1e-15)
    np.testing.assert_allclose(partial_transpose(np.kron(s, t), 2), np.kron(s, t.T), atol=1e-15)


def test_partial_transpose_involution(rng):
    rho = random_density(rng, 9)
    for sub in (1, 2):
        np.testing.assert_array_equal(partial_transpose(partial_transpose(rho, sub), sub), rho)


def test_partial_transpose_index_map(rng):
    rho = random_density(rng, 9)
    pt = partial_transpose(rho, 1)
    for i, a, j, b in np.ndindex(3, 3, 3, 3):
        assert pt[3 * j + a, 3 * i + b] == rho[3 * i + a, 3 * j + b]


def test_maximally_entangled_pt_spectrum():
    rho = maximally_entangled()
    # brute-force oracle: LAPACK on the explicitly built partial transpose
    pt = np.zeros((9, 9), dtype=complex)
    for i, a, j, b in np.ndindex(3, 3, 3, 3):
        pt[3 * j + a, 3 * i + b] = rho[3 * i + a, 3 * j + b]
    expected = np.linalg.eigvalsh(pt)
    np.testing.assert_allclose(expected, [-1 / 3] * 3 + [1 / 3] * 6, atol=1e-14)
    got = hermitian_eigenvalues(partial_transpose(rho)).eigenvalues
    np.testing.assert_allclose(got, expected, atol=1e-8)


# --- negativity ------------------------------------------------------------------

def test_negativity_reference_values(rng):
    assert negativity(maximally_entangled()) == pytest.approx(1.0, abs=1e-10)
    assert negativity(np.eye(9) / 9) == 0.0
    prod = np.kron(random_density(rng, 3), random_density(rng, 3))
    assert negativity(prod) == pytest.approx(0.0, abs=1e-12)
    cc = basis_ket(2, 2)
    assert negativity(np.outer(cc, cc)) == 0.0


def test_negativity_subsystem_symmetric(rng):
    for _ in range(20):
        rho = random_density(rng, 9, rank=2)
        assert negativity(rho, 1) == pytest.approx(negativity(rho, 2), abs=1e-10)


def test_local_unitary_invariance(rng):
    rho = evolved_state(SystemParams(gamma0=1.0, theta=0.8, n_atoms=3), 4.0)
    ref = negativity(rho)
    for _ in range(20):
        u = np.kron(random_unitary(rng, 3), random_unitary(rng, 3))
        assert negativity(u @ rho @ u.conj().T) == pytest.approx(ref, abs=1e-8)


def test_mixing_with_ground_state_is_monotone():
    cc = basis_ket(2, 2)
    cc = np.outer(cc, cc)
    for rho in (maximally_entangled(), evolved_state(SystemParams(theta=1.0), 3.0)):
        values = [negativity(p * rho + (1 - p) * cc) for p in np.linspace(1, 0, 21)]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_negativity_rejects_invalid_state():
    with pytest.raises(ParameterError):
        negativity(np.eye(9))
