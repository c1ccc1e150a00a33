"""Negativity of two-qutrit states."""

from __future__ import annotations

import numpy as np

from .channel import check_density
from .errors import NumericalError, ParameterError
from .jacobi import Spectrum, hermitian_eigenvalues

CLAMP_TOL = 1e-10


def partial_transpose(rho, subsystem: int = 1) -> np.ndarray:
    """Transpose one tensor factor of a 9x9 two-qutrit operator.

    Indices are ordered ``(i a), (j b)`` with ``i, j`` labelling qutrit 1;
    for ``subsystem=1`` entry ``((i,a),(j,b))`` moves to ``((j,a),(i,b))``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (9, 9):
        raise ParameterError(f"expected a 9x9 matrix, got shape {rho.shape}")
    r = rho.reshape(3, 3, 3, 3)
    if subsystem == 1:
        return r.transpose(2, 1, 0, 3).reshape(9, 9)
    if subsystem == 2:
        return r.transpose(0, 3, 2, 1).reshape(9, 9)
    raise ParameterError(f"subsystem must be 1 or 2, got {subsystem}")


def pt_spectrum(rho, subsystem: int = 1) -> Spectrum:
    return hermitian_eigenvalues(partial_transpose(rho, subsystem))


def negativity(rho, subsystem: int = 1) -> float:
    """Absolute sum of the negative eigenvalues of the partial transpose.

    Equal to ``(||rho^T1||_1 - 1) / 2``; the maximally entangled two-qutrit
    state gives 1. Round-off can push the trace-norm form a hair below zero;
    values within ``1e-10`` below are clamped to 0.
    """
    rho = check_density(rho, 9)
    ev = pt_spectrum(rho, subsystem).eigenvalues
    value = 0.5 * (np.sum(np.abs(ev)) - 1.0)
    if value < 0.0:
        if value < -CLAMP_TOL:
            raise NumericalError(f"trace norm below 1 by {-2 * value:.2e}")
        value = 0.0
    return float(value)


def basis_ket(*levels: int) -> np.ndarray:
    """Product ket ``|l1 l2 ...>`` in the qutrit basis ``0=A, 1=B, 2=C``."""
    ket = np.ones(1, dtype=complex)
    for level in levels:
        e = np.zeros(3, dtype=complex)
        e[level] = 1.0
        ket = np.kron(ket, e)
    return ket


def maximally_entangled() -> np.ndarray:
    """``(|00> + |11> + |22>)/sqrt(3)`` as a density matrix."""
    psi = (basis_ket(0, 0) + basis_ket(1, 1) + basis_ket(2, 2)) / np.sqrt(3.0)
    return np.outer(psi, psi.conj())
