"""Cyclic Jacobi diagonalization of small complex Hermitian matrices.

Each rotation first removes the phase of the pivot ``a_pq`` with a diagonal
unitary, then applies an ordinary real Jacobi rotation to the resulting
real symmetric 2x2 block. Sweeps visit every pair in row-cyclic order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError

OFF_TOL = 1e-12
MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-10
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues; ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int

    def __len__(self):
        return self.eigenvalues.size


def _off_norm(a: np.ndarray) -> float:
    # summed directly; ||a||^2 - ||diag||^2 cancels down to ~1e-8
    return float(np.linalg.norm(a[~np.eye(a.shape[0], dtype=bool)]))


def hermitian_eigenvalues(m, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Diagonalize a complex Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian to within ``1e-10`` (it is symmetrized
        before iterating).
    tol : float
        Stop once the off-diagonal Frobenius norm is below ``tol * ||m||_F``.
    max_sweeps : int
        Cap on full sweeps over all pivot pairs.

    Returns
    -------
    Spectrum
        Eigenvalues in ascending order with orthonormal eigenvectors.

    Raises
    ------
    ParameterError
        If ``m`` is not square or not Hermitian.
    NumericalError
        If the off-diagonal norm has not converged after ``max_sweeps``.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {a.shape}")
    scale = np.linalg.norm(a)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > HERMITIAN_TOL * max(scale, 1.0):
        raise ParameterError("matrix is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * scale
    tiny = np.finfo(float).tiny

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps == max_sweeps:
            raise NumericalError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mod = abs(apq)
                if mod <= tiny:
                    continue
                phase = apq / mod
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mod)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0

    diag = np.diag(a)
    if np.max(np.abs(diag.imag), initial=0.0) > IMAG_TOL * max(scale, 1.0):
        raise NumericalError("eigenvalues acquired imaginary parts")
    order = np.argsort(diag.real, kind="stable")
    return Spectrum(diag.real[order], v[:, order], sweeps)
