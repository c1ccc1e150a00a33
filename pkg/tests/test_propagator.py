import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vqutrit import AmplitudeState, ParameterError, SystemParams, d_pm, evolve_amplitudes, g12, g_pm
from vqutrit.propagator import mixing_pair

from conftest import params_strategy


def test_params_reject_invalid():
    with pytest.raises(ParameterError):
        SystemParams(theta=1.5)
    with pytest.raises(ParameterError):
        SystemParams(lam=0.0)
    with pytest.raises(ParameterError):
        SystemParams(n_atoms=0)
    with pytest.raises(ParameterError):
        SystemParams(gamma0=-0.1)


def test_d_pm_values():
    d_plus, d_minus = d_pm(SystemParams(gamma0=1.0, lam=0.8, theta=1.0, n_atoms=1))
    assert d_minus == pytest.approx(0.8, abs=1e-15)
    # 0.64 - 3.2 = -2.56 -> principal root 1.6i
    assert d_plus == pytest.approx(1.6j, abs=1e-15)
    assert d_plus.imag > 0


@pytest.mark.parametrize("lam,theta,n", [(0.3, 0.0, 1), (1.7, 0.4, 5)])
def test_d_pm_zero_coupling(lam, theta, n):
    assert d_pm(SystemParams(gamma0=0.0, lam=lam, theta=theta, n_atoms=n)) == (lam, lam)


def test_g_pm_at_zero(fig2_params):
    assert g_pm(fig2_params, 0.0) == (1.0, 1.0)


@pytest.mark.parametrize("gamma0,n", [(0.3, 1), (1.0, 4), (2.5, 9)])
def test_strong_interference_freezes_antisymmetric_branch(gamma0, n):
    p = SystemParams(gamma0=gamma0, lam=0.8, theta=1.0, n_atoms=n)
    _, g_minus = g_pm(p, np.linspace(0, 200, 401))
    assert np.max(np.abs(g_minus - 1.0)) < 1e-12


def test_critical_damping_limit():
    lam, theta, n = 0.8, 0.5, 2
    p = SystemParams(gamma0=lam / (2 * (1 + theta) * n), lam=lam, theta=theta, n_atoms=n)
    assert abs(d_pm(p)[0]) < 1e-7
    g_plus, _ = g_pm(p, 2.0 / lam)
    assert g_plus == pytest.approx(2.0 * np.exp(-1.0), abs=1e-12)


@pytest.mark.parametrize("t", [0.5, 3.0, 17.0])
def test_continuous_through_branch_point(t):
    lam, theta, n = 0.8, 0.3, 3
    g_star = lam / (2 * (1 + theta) * n)
    limit = np.exp(-lam * t / 2) * (1 + lam * t / 2)
    for g in (g_star - 1e-6, g_star, g_star + 1e-6):
        g_plus, _ = g_pm(SystemParams(gamma0=g, lam=lam, theta=theta, n_atoms=n), t)
        assert abs(g_plus - limit) < 1e-4


def test_branch_matches_damped_oscillator_ode():
    # G'' + lam G' + (N (1+theta) gamma0 lam / 2) G = 0, G(0)=1, G'(0)=0
    from scipy.integrate import solve_ivp

    for gamma0 in (0.05, 0.2, 1.3):
        p = SystemParams(gamma0=gamma0, lam=0.8, theta=0.6, n_atoms=2)
        w2 = p.n_atoms * (1 + p.theta) * gamma0 * p.lam / 2

        sol = solve_ivp(lambda t, y: [y[1], -p.lam * y[1] - w2 * y[0]], (0, 15), [1.0, 0.0],
                        t_eval=np.linspace(0, 15, 61), rtol=1e-11, atol=1e-13)
        g_plus, _ = g_pm(p, sol.t)
        assert np.max(np.abs(g_plus - sol.y[0])) < 1e-8


@settings(max_examples=200, deadline=None)
@given(params_strategy, st.floats(0.0, 100.0))
def test_propagators_bounded(p, t):
    g_plus, g_minus = g_pm(p, t)
    assert abs(g_plus) <= 1.0 + 1e-12
    assert abs(g_minus) <= 1.0 + 1e-12
    assert abs(g_plus.imag) < 1e-12 and abs(g_minus.imag) < 1e-12


def test_propagators_bounded_grid():
    ts = np.linspace(0, 60, 241)
    for gamma0 in (0.0, 0.1, 0.5, 1.0, 4.0):
        for theta in (0.0, 0.25, 0.5, 0.75, 1.0):
            for n in (1, 3, 9):
                gp, gm = g_pm(SystemParams(gamma0=gamma0, lam=0.8, theta=theta, n_atoms=n), ts)
                assert gp[0] == 1 and gm[0] == 1
                assert np.all(np.abs(gp) <= 1 + 1e-12) and np.all(np.abs(gm) <= 1 + 1e-12)


def test_g12_single_atom(fig2_params):
    pair = g12(fig2_params, 4.0)
    assert pair.g1 == pytest.approx((pair.g_plus + pair.g_minus) / 2, abs=1e-15)
    assert pair.g2 == pytest.approx((pair.g_plus - pair.g_minus) / 2, abs=1e-15)


def test_g12_at_zero(fig2_params):
    pair = g12(fig2_params.with_(n_atoms=5), 0.0)
    assert (pair.g_plus, pair.g_minus, pair.g1, pair.g2) == (1, 1, 1, 0)


def test_g12_many_atoms_preserve_initial_condition():
    pair = g12(SystemParams(gamma0=1.0, lam=0.8, theta=1.0, n_atoms=10 ** 6), 5.0)
    assert abs(pair.g1 - 1.0) < 1e-5
    assert abs(pair.g2) < 1e-5


@settings(max_examples=100, deadline=None)
@given(params_strategy)
def test_g12_sum_difference_identity(p):
    pair = g12(p, 3.0)
    n = p.n_atoms
    assert abs(n * (pair.g1 + pair.g2) - (n - 1) - pair.g_plus) < 1e-12 * n
    assert abs(n * (pair.g1 - pair.g2) - (n - 1) - pair.g_minus) < 1e-12 * n
    assert abs(pair.g1 + pair.g2 - (pair.g_plus + n - 1) / n) < 1e-12


def test_evolve_identity_at_zero(rng):
    z = rng.normal(size=(2, 4)) + 1j * rng.normal(size=(2, 4))
    z /= 2 * np.linalg.norm(z)
    init = AmplitudeState(0.5, z[0], z[1])
    out = evolve_amplitudes(SystemParams(n_atoms=4), init, 0.0)
    np.testing.assert_allclose(out.zeta_a, init.zeta_a, atol=1e-15)
    np.testing.assert_allclose(out.zeta_b, init.zeta_b, atol=1e-15)
    assert out.zeta0 == init.zeta0


@pytest.mark.parametrize("n", [1, 2, 6])
def test_evolve_single_excited_atom(n):
    p = SystemParams(gamma0=0.7, lam=0.8, theta=0.4, n_atoms=n)
    a, b = 0.6 + 0.1j, -0.3j
    out = evolve_amplitudes(p, AmplitudeState.single_atom(a, b, 0.5, n), 6.0)
    pair = g12(p, 6.0)
    assert out.zeta_a[0] == pytest.approx(pair.g1 * a + pair.g2 * b, abs=1e-14)
    assert out.zeta_b[0] == pytest.approx(pair.g2 * a + pair.g1 * b, abs=1e-14)


def test_evolve_matches_printed_correction_sum(rng):
    # zeta_l(t) = G zeta_l(0) - (1 - G)/N sum_{j != l} (zeta_j(0) - zeta_l(0)) per branch
    p = SystemParams(gamma0=0.9, lam=0.8, theta=0.3, n_atoms=5)
    za = (rng.normal(size=5) + 1j * rng.normal(size=5)) * 0.2
    zb = (rng.normal(size=5) + 1j * rng.normal(size=5)) * 0.2
    out = evolve_amplitudes(p, AmplitudeState(0.1, za, zb), 2.5)
    gp, gm = g_pm(p, 2.5)
    for g, z0, got in ((gp, za + zb, out.zeta_a + out.zeta_b), (gm, za - zb, out.zeta_a - out.zeta_b)):
        expect = [g * z0[l] - (1 - g) / 5 * sum(z0[j] - z0[l] for j in range(5) if j != l)
                  for l in range(5)]
        np.testing.assert_allclose(got, expect, atol=1e-14)


def test_evolve_symmetric_state(rng):
    p = SystemParams(gamma0=1.2, lam=0.8, theta=0.7, n_atoms=3)
    za, zb = np.full(3, 0.3 + 0.1j), np.full(3, -0.2j)
    out = evolve_amplitudes(p, AmplitudeState(0.2, za, zb), 1.7)
    gp, gm = g_pm(p, 1.7)
    np.testing.assert_allclose(out.zeta_a + out.zeta_b, gp * (za + zb), atol=1e-15)
    np.testing.assert_allclose(out.zeta_a - out.zeta_b, gm * (za - zb), atol=1e-15)


def test_evolve_rejects_negative_time(fig2_params):
    with pytest.raises(ParameterError):
        evolve_amplitudes(fig2_params, AmplitudeState.single_atom(1, 0, 0, 1), -1.0)


@settings(max_examples=150, deadline=None)
@given(params_strategy, st.floats(0.0, 50.0), st.integers(0, 2 ** 32 - 1))
def test_evolve_never_creates_population(p, t, seed):
    rng = np.random.default_rng(seed)
    n = p.n_atoms
    z = rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n))
    z /= np.linalg.norm(z)
    init = AmplitudeState(0.0, z[0], z[1])
    out = evolve_amplitudes(p, init, t)
    assert out.atomic_population() <= init.atomic_population() + 1e-9
    assert out.norm() <= 1.0 + 1e-9


def test_mixing_pair_vectorized(fig2_params):
    ts = np.linspace(0, 5, 7)
    g1, g2 = mixing_pair(*g_pm(fig2_params.with_(n_atoms=3), ts), 3)
    for t, a, b in zip(ts, g1, g2):
        pair = g12(fig2_params.with_(n_atoms=3), t)
        assert a == pytest.approx(pair.g1) and b == pytest.approx(pair.g2)
