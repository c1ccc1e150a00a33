"""Closed-form single-excitation dynamics of N V-type atoms in one reservoir.

The reservoir has a Lorentzian spectral density, which makes the memory
kernel a single decaying exponential ``(gamma0 * lam / 2) exp(-lam |tau|)``.
In the symmetric/antisymmetric basis ``zeta^+- = zeta^A +- zeta^B`` the
collective amplitude of each branch then obeys a damped-oscillator
equation with unit initial value and zero initial slope, solved by ``G+-``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .params import SystemParams

# |D| below this fraction of lambda switches to the critically damped series.
DEGENERATE_D_RTOL = 1e-8


@dataclass(frozen=True)
class PropagatorPair:
    """Branch propagators ``G+``, ``G-`` and the single-atom mixing pair ``G1``, ``G2``."""

    g_plus: complex
    g_minus: complex
    g1: complex
    g2: complex
    time: float


@dataclass
class AmplitudeState:
    """Single-excitation amplitudes of the atoms (reservoir part implicit).

    ``zeta0`` is the amplitude of the all-ground/vacuum component and is a
    constant of motion.
    """

    zeta0: complex
    zeta_a: np.ndarray
    zeta_b: np.ndarray = field(default=None)

    def __post_init__(self):
        self.zeta_a = np.atleast_1d(np.asarray(self.zeta_a, dtype=complex))
        if self.zeta_b is None:
            self.zeta_b = np.zeros_like(self.zeta_a)
        self.zeta_b = np.atleast_1d(np.asarray(self.zeta_b, dtype=complex))
        if self.zeta_a.shape != self.zeta_b.shape or self.zeta_a.ndim != 1:
            raise ParameterError("zeta_a and zeta_b must be 1-D arrays of equal length")
        self.zeta0 = complex(self.zeta0)

    @property
    def n_atoms(self) -> int:
        return self.zeta_a.size

    def atomic_population(self) -> float:
        return float(np.sum(np.abs(self.zeta_a) ** 2 + np.abs(self.zeta_b) ** 2))

    def norm(self) -> float:
        """Total system norm; the missing weight sits in the reservoir."""
        return abs(self.zeta0) ** 2 + self.atomic_population()

    @classmethod
    def single_atom(cls, zeta_a: complex, zeta_b: complex, zeta0: complex, n_atoms: int):
        """Only atom 1 excited, the other ``n_atoms - 1`` in the ground state."""
        a = np.zeros(n_atoms, dtype=complex)
        b = np.zeros(n_atoms, dtype=complex)
        a[0], b[0] = zeta_a, zeta_b
        return cls(zeta0, a, b)


def d_pm(params: SystemParams) -> tuple[complex, complex]:
    """Return ``(D+, D-)``, ``sqrt(lam^2 - 2 gamma0 (1 +- theta) lam N)``.

    The principal complex square root is taken, so a negative radicand
    gives a purely imaginary value with positive imaginary part.
    """
    lam = params.lam
    base = 2.0 * params.gamma0 * lam * params.n_atoms
    d_plus = np.sqrt(complex(lam * lam - base * (1.0 + params.theta)))
    d_minus = np.sqrt(complex(lam * lam - base * (1.0 - params.theta)))
    return complex(d_plus), complex(d_minus)


def _branch(d: complex, lam: float, t):
    # exp(-lam t/2) [cosh(Dt/2) + (lam/D) sinh(Dt/2)] written with decaying
    # exponentials only (Re D <= lam), and expm1 for the sinh part.
    t = np.asarray(t, dtype=float)
    if abs(d) < DEGENERATE_D_RTOL * lam:
        x = 0.5 * lam * t
        return np.exp(-x) * (1.0 + x + (d * d * t * t / 8.0) * (1.0 + lam * t / 6.0)) + 0j
    grow = np.exp(0.5 * (d - lam) * t)
    cosh_part = 0.5 * (grow + np.exp(-0.5 * (d + lam) * t))
    sinh_over_d = -0.5 * grow * np.expm1(-d * t) / d
    return cosh_part + lam * sinh_over_d


def g_pm(params: SystemParams, t):
    """Return ``(G+(t), G-(t))``; ``t`` may be a scalar or an array of times >= 0."""
    if np.any(np.asarray(t) < 0):
        raise ParameterError("time must be non-negative")
    d_plus, d_minus = d_pm(params)
    g_plus = _branch(d_plus, params.lam, t)
    g_minus = _branch(d_minus, params.lam, t)
    if np.ndim(t) == 0:
        return complex(g_plus), complex(g_minus)
    return g_plus, g_minus


def mixing_pair(g_plus, g_minus, n_atoms: int):
    """``(G1, G2)`` from the branch propagators for an atom whose partners start unexcited."""
    w = (n_atoms - 1) / (2.0 * n_atoms)
    g1 = 0.5 * (g_plus + g_minus) + w * (2.0 - g_plus - g_minus)
    g2 = 0.5 * (g_plus - g_minus) + w * (g_minus - g_plus)
    return g1, g2


def g12(params: SystemParams, t: float) -> PropagatorPair:
    """All four propagators at a single time ``t``."""
    g_plus, g_minus = g_pm(params, float(t))
    g1, g2 = mixing_pair(g_plus, g_minus, params.n_atoms)
    return PropagatorPair(g_plus, g_minus, g1, g2, float(t))


def evolve_amplitudes(params: SystemParams, initial: AmplitudeState, t: float) -> AmplitudeState:
    """Propagate every atom's amplitudes to time ``t``.

    Each branch amplitude moves by ``(G - 1)`` times the branch mean, which
    is the closed-form solution rewritten around the collective mode; only
    the collective (sum) amplitude couples to the common reservoir.
    """
    if t < 0:
        raise ParameterError("time must be non-negative")
    if initial.n_atoms != params.n_atoms:
        raise ParameterError(
            f"state has {initial.n_atoms} atoms but params.n_atoms={params.n_atoms}")
    g_plus, g_minus = g_pm(params, float(t))
    plus = initial.zeta_a + initial.zeta_b
    minus = initial.zeta_a - initial.zeta_b
    plus_t = plus + (g_plus - 1.0) * plus.mean()
    minus_t = minus + (g_minus - 1.0) * minus.mean()
    return AmplitudeState(initial.zeta0, 0.5 * (plus_t + minus_t), 0.5 * (plus_t - minus_t))
