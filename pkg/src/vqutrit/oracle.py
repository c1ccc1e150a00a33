"""Brute-force reservoir: integrate the single-excitation Schrodinger equation
with a finite set of bath modes.

This is an independent check of the closed-form propagators. The bath is a
uniform frequency grid whose couplings sample the Lorentzian spectral
density. Interference between the two decay channels (``theta``) is built
in exactly by giving every mode two orthogonal polarizations: level A
couples to ``(g, 0)`` and level B to ``(theta g, sqrt(1 - theta^2) g)``,
so the A-B cross kernel is ``theta`` times the direct one for any grid.

Integration runs in the frame rotating at ``omega0``, where the coupled
equations have constant coefficients; atomic amplitudes coincide with the
interaction-picture ones, mode amplitudes differ by ``exp(-i (w_k - omega0) t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundstate import lorentzian
from .errors import NormDriftError, ParameterError
from .params import SystemParams
from .propagator import AmplitudeState

NORM_TOL = 1e-8
NORM_ABORT = 1e-6
DT_RESOLUTION = 0.1
DEFAULT_DT_FACTOR = 0.05


@dataclass(frozen=True)
class DiscretizedBath:
    """Mode grid and per-mode coupling vectors (one column per polarization)."""

    mode_freqs: np.ndarray
    couplings_a: np.ndarray
    couplings_b: np.ndarray
    band: tuple[float, float]
    spacing: float

    @property
    def mode_count(self) -> int:
        return self.mode_freqs.size

    def kernel(self, params: SystemParams, tau, cross: bool = False) -> np.ndarray:
        """Discrete memory kernel ``sum_k g_k . g_k' exp(i (omega0 - w_k) tau)``."""
        other = self.couplings_b if cross else self.couplings_a
        weights = np.sum(self.couplings_a * other, axis=1)
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        phase = np.exp(1j * np.outer(tau, params.omega0 - self.mode_freqs))
        return phase @ weights


def build_bath(params: SystemParams, mode_count: int = 4000, half_bandwidth: float | None = None,
               cutoff_at_zero: bool = False) -> DiscretizedBath:
    """Sample the Lorentzian on ``mode_count`` midpoints of ``[omega0 - W, omega0 + W]``.

    ``half_bandwidth`` defaults to ``40 * lam``. With ``cutoff_at_zero`` the
    band is clipped to non-negative frequencies, which is what opens the
    gap below the continuum where a bound state can live.
    """
    if half_bandwidth is None:
        half_bandwidth = 40.0 * params.lam
    if mode_count < 2:
        raise ParameterError(f"need at least 2 modes, got {mode_count}")
    if not half_bandwidth > 0:
        raise ParameterError(f"half bandwidth must be positive, got {half_bandwidth}")
    lo = params.omega0 - half_bandwidth
    if cutoff_at_zero:
        lo = max(lo, 0.0)
    hi = params.omega0 + half_bandwidth
    spacing = (hi - lo) / mode_count
    freqs = lo + spacing * (np.arange(mode_count) + 0.5)
    g = np.sqrt(lorentzian(params, freqs) * spacing)
    zero = np.zeros_like(g)
    couplings_a = np.column_stack([g, zero])
    couplings_b = np.column_stack([params.theta * g, math.sqrt(max(0.0, 1.0 - params.theta ** 2)) * g])
    return DiscretizedBath(freqs, couplings_a, couplings_b, (lo, hi), spacing)


@dataclass(frozen=True)
class OracleTrajectory:
    """Atomic amplitudes on the integration grid; ``zeta_a[i, l]`` is atom ``l`` at ``times[i]``."""

    times: np.ndarray
    zeta_a: np.ndarray
    zeta_b: np.ndarray
    mode_amps: np.ndarray
    norm_drift: float

    def populations(self) -> np.ndarray:
        return np.sum(np.abs(self.zeta_a) ** 2 + np.abs(self.zeta_b) ** 2, axis=1)


def default_dt(params: SystemParams, bath: DiscretizedBath) -> float:
    detuning = max(abs(bath.band[0] - params.omega0), abs(bath.band[1] - params.omega0))
    return DEFAULT_DT_FACTOR / max(detuning, params.lam)


def simulate(params: SystemParams, bath: DiscretizedBath, initial: AmplitudeState,
             t_end: float, dt: float | None = None, check_norm: bool = True) -> OracleTrajectory:
    """Fixed-step RK4 integration of atoms plus bath up to ``t_end``.

    The step is shrunk slightly so that an integer number of steps lands on
    ``t_end``; it must resolve the band edge, ``dt <= 0.1 / max(W, lam)``.

    Raises
    ------
    ParameterError
        If ``dt`` is too coarse or the state does not match ``params``.
    NormDriftError
        If the total norm drifts by more than ``1e-6``.
    """
    detuning = bath.mode_freqs - params.omega0
    w_max = max(abs(bath.band[0] - params.omega0), abs(bath.band[1] - params.omega0), params.lam)
    if dt is None:
        dt = default_dt(params, bath)
    if not 0 < dt <= DT_RESOLUTION / w_max * (1 + 1e-12):
        raise ParameterError(f"dt={dt} does not resolve the band (need <= {DT_RESOLUTION / w_max:.3g})")
    if initial.n_atoms != params.n_atoms:
        raise ParameterError("initial state atom count differs from params.n_atoms")
    if initial.norm() > 1.0 + 1e-10:
        raise ParameterError("initial state norm exceeds 1")
    n_steps = max(1, math.ceil(t_end / dt - 1e-9))
    h = t_end / n_steps

    n, m = params.n_atoms, bath.mode_count
    # state layout: [zeta_a (N), zeta_b (N), polarization-1 modes (M), polarization-2 modes (M)]
    ga = bath.couplings_a.T.ravel()
    gb = bath.couplings_b.T.ravel()
    mi_det = -1j * np.tile(detuning, 2)

    def rhs(y):
        v = y[2 * n:]
        out = np.empty_like(y)
        out[:n] = -1j * (ga @ v)
        out[n:2 * n] = -1j * (gb @ v)
        field = ga * y[:n].sum() + gb * y[n:2 * n].sum()
        out[2 * n:] = mi_det * v - 1j * field
        return out

    y = np.zeros(2 * n + 2 * m, dtype=complex)
    y[:n], y[n:2 * n] = initial.zeta_a, initial.zeta_b
    const = abs(initial.zeta0) ** 2
    norm0 = const + np.vdot(y, y).real

    times = h * np.arange(n_steps + 1)
    za_hist = np.empty((n_steps + 1, n), dtype=complex)
    zb_hist = np.empty((n_steps + 1, n), dtype=complex)
    za_hist[0], zb_hist[0] = y[:n], y[n:2 * n]
    drift = 0.0
    half, sixth = 0.5 * h, h / 6.0
    for step in range(1, n_steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + half * k1)
        k3 = rhs(y + half * k2)
        k4 = rhs(y + h * k3)
        k2 += k3
        k2 *= 2.0
        k1 += k2
        k1 += k4
        k1 *= sixth
        y += k1
        za_hist[step], zb_hist[step] = y[:n], y[n:2 * n]
        if check_norm:
            drift = max(drift, abs(const + np.vdot(y, y).real - norm0))
            if drift > NORM_ABORT:
                raise NormDriftError(
                    f"norm drift {drift:.2e} at t={times[step]:.4g} with dt={h:.3g}; "
                    f"reduce dt below {h * (NORM_ABORT / drift) ** (1 / 6):.3g}")
    modes = y[2 * n:].reshape(2, m) * np.exp(1j * detuning * t_end)
    return OracleTrajectory(times, za_hist, zb_hist, modes.T, drift)
