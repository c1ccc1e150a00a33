"""Kraus representation of the single-qutrit dissipative channel.

Basis order is ``(|A>, |B>, |C>)``: the two excited levels, then the ground
level. The two-qutrit channel is the tensor square of the single-qutrit one
(independent, identical reservoirs).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

MAGNITUDE_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

_DECAY_ANTISYM = np.array([[0, 0, 0], [0, 0, 0], [1, -1, 0]], dtype=complex) / np.sqrt(2.0)
_DECAY_SYM = np.array([[0, 0, 0], [0, 0, 0], [1, 1, 0]], dtype=complex) / np.sqrt(2.0)


@dataclass(frozen=True)
class KrausSet:
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray

    def __iter__(self):
        return iter((self.k1, self.k2, self.k3))

    def completeness(self) -> np.ndarray:
        """``sum K^dagger K``; the identity for a trace-preserving channel."""
        return sum(k.conj().T @ k for k in self)

    def two_qutrit(self) -> list[np.ndarray]:
        """The nine product operators ``K_k (x) K_l``."""
        return [np.kron(a, b) for a in self for b in self]


def _weight(modulus: float) -> float:
    radicand = 1.0 - modulus * modulus
    if radicand < 0.0:
        if modulus > 1.0 + MAGNITUDE_TOL:
            raise ParameterError(
                f"|G1 +- G2| = {modulus!r} exceeds 1; propagator out of range")
        radicand = 0.0
    return np.sqrt(radicand)


def kraus_set(g1: complex, g2: complex) -> KrausSet:
    """Kraus operators for mixing amplitudes ``(G1, G2)``.

    Raises
    ------
    ParameterError
        If ``|G1 + G2|`` or ``|G1 - G2|`` exceeds 1 beyond round-off.
    """
    k1 = np.array([[g1, g2, 0], [g2, g1, 0], [0, 0, 1]], dtype=complex)
    k2 = _weight(abs(g1 - g2)) * _DECAY_ANTISYM
    k3 = _weight(abs(g1 + g2)) * _DECAY_SYM
    return KrausSet(k1, k2, k3)


def identity_kraus() -> KrausSet:
    return kraus_set(1.0, 0.0)


def check_density(rho, dim: int | None = None) -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ParameterError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise ParameterError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ParameterError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise ParameterError(f"density matrix trace is {np.trace(rho).real!r}, not 1")
    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise ParameterError("density matrix has a negative eigenvalue")
    return rho


def apply_single(rho, ks: KrausSet) -> np.ndarray:
    """``sum_i K_i rho K_i^dagger`` on a single qutrit."""
    rho = check_density(rho, 3)
    return sum(k @ rho @ k.conj().T for k in ks)


def apply_two(rho, ks: KrausSet) -> np.ndarray:
    """Apply the same channel independently to both qutrits of a 9x9 state."""
    rho = check_density(rho, 9)
    # (K_k (x) K_l) rho (K_k (x) K_l)^dagger summed over k, l, done as two
    # successive one-sided channels on the reshaped (i a, j b) tensor.
    r = rho.reshape(3, 3, 3, 3)
    mid = sum(np.einsum("pi,iajb,qj->paqb", k, r, k.conj()) for k in ks)
    out = sum(np.einsum("ra,paqb,sb->prqs", k, mid, k.conj()) for k in ks)
    return out.reshape(9, 9)


def density_from_amplitudes(zeta_a: complex, zeta_b: complex, zeta0: complex) -> np.ndarray:
    """Reduced state of one atom from its excited amplitudes and the ground amplitude.

    Coherences with ``|C>`` come only from ``zeta0``; whatever weight is not in
    the excited levels goes to the ``|C><C|`` population.
    """
    pa, pb, p0 = abs(zeta_a) ** 2, abs(zeta_b) ** 2, abs(zeta0) ** 2
    if pa + pb > 1.0 + TRACE_TOL:
        raise ParameterError("excited populations exceed 1")
    if p0 > 1.0 - pa - pb + TRACE_TOL:
        raise ParameterError("ground amplitude inconsistent with excited populations")
    v = np.array([zeta_a, zeta_b, zeta0], dtype=complex)
    rho = np.outer(v, v.conj())
    rho[2, 2] = 1.0 - pa - pb
    return rho
