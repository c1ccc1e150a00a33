"""System-reservoir bound states below the continuum for a Lorentzian reservoir.

A bound state is a real root ``E < 0`` of

    F(E) = omega0 - N (1 + theta) I(E) - E,   I(E) = int_0^inf J(w) dw / (w - E).

``I`` is evaluated in closed form (partial fractions). For weak coupling the
root sits exponentially close to zero (``ln|E|`` scales like ``-1/gamma0``),
so the root is located in the log-depth variable ``s = ln(-E / omega0)``,
in which ``F`` is smooth and close to linear on the shallow side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import BracketError, NumericalError, ParameterError
from .params import SystemParams

RESIDUAL_TOL = 1e-10
SHALLOW_SEED = 1e-12
EXPANSION = 4.0
MAX_EXPANSIONS = 64
MAX_ITER = 200
POLISH_FACTOR = 1e-3


def lorentzian(params: SystemParams, omega):
    """Lorentzian profile at any real frequency (no band edge)."""
    lam = params.lam
    omega = np.asarray(omega, dtype=float)
    return params.gamma0 * lam * lam / (2.0 * np.pi * ((params.omega0 - omega) ** 2 + lam * lam))


def spectral_density(params: SystemParams, omega, cross: bool = False):
    """Lorentzian ``J(w) = gamma0 lam^2 / (2 pi ((omega0 - w)^2 + lam^2))``.

    With ``cross=True`` returns the cross-channel density ``theta * J(w)``.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ParameterError("spectral density is defined for omega >= 0")
    j = lorentzian(params, omega)
    if cross:
        j = params.theta * j
    return float(j) if j.ndim == 0 else j


def _dispersion_from_log(params: SystemParams, log_depth: float) -> float:
    # I(E) with E = -omega0 * exp(log_depth); ln|E| enters directly so the
    # expression stays finite when |E| underflows.
    lam, w0 = params.lam, params.omega0
    depth = w0 * math.exp(log_depth) if log_depth < 700 else math.inf
    a = w0 + depth
    if math.isinf(a):
        return 0.0
    log_term = 0.5 * math.log(w0 * w0 + lam * lam) - (math.log(w0) + log_depth)
    atan_term = (a / lam) * (0.5 * math.pi + math.atan(w0 / lam))
    return params.gamma0 * lam * lam / (2.0 * math.pi) * (log_term + atan_term) / (a * a + lam * lam)


def dispersion_integral(params: SystemParams, e: float) -> float:
    """Closed-form ``int_0^inf J(w) dw / (w - e)`` for ``e < 0``."""
    if not e < 0:
        raise ParameterError(f"dispersion integral needs e < 0, got {e!r}")
    return _dispersion_from_log(params, math.log(-e / params.omega0))


def dispersion_quadrature(params: SystemParams, e: float, span: float = 50.0):
    """Adaptive-quadrature value of the dispersion integral.

    Integrates over ``[0, omega0 + span*lam]`` piecewise, with breakpoints
    geometric in ``|e|`` near the origin (where the integrand varies on the
    scale ``|e|``) and at the Lorentzian peak, then adds the tail
    ``[omega0 + span*lam, inf)`` by a separate infinite-range quadrature.

    Returns
    -------
    value : float
        Quadrature estimate of ``I(e)``.
    tail_bound : float
        Analytic upper bound ``gamma0 lam^2 / (4 pi L^2)`` on the tail
        beyond ``L = span * lam`` from the peak.
    """
    if not e < 0:
        raise ParameterError(f"dispersion integral needs e < 0, got {e!r}")
    lam, w0 = params.lam, params.omega0
    upper = w0 + span * lam

    def f(w):
        return spectral_density(params, w) / (w - e)

    edges = [0.0]
    scale = abs(e)
    while scale < min(w0, 1.0) * 0.5:
        edges.append(scale)
        scale *= 10.0
    edges += [x for x in (w0 - lam, w0, w0 + lam) if x > edges[-1]]
    edges.append(upper)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    total += integrate.quad(f, upper, np.inf, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    tail_bound = params.gamma0 * lam * lam / (4.0 * math.pi * (span * lam) ** 2)
    return total, tail_bound


def _weight(params: SystemParams) -> float:
    # I(E) already carries gamma0, so only N(1 + theta) multiplies it
    return params.n_atoms * (1.0 + params.theta)


def bound_state_function(params: SystemParams, e: float) -> float:
    """``F(E) = omega0 - N(1+theta) I(E) - E``; strictly decreasing on ``E < 0``."""
    return params.omega0 - _weight(params) * dispersion_integral(params, e) - e


@dataclass(frozen=True)
class BoundStateResult:
    """Bound-state root and solver diagnostics.

    ``log_depth`` is ``ln(-energy / omega0)``; it stays meaningful when the
    energy itself is too close to zero to be represented.
    """

    energy: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    log_depth: float


def _f_log(params: SystemParams, s: float) -> float:
    depth = params.omega0 * math.exp(s)
    return params.omega0 - _weight(params) * _dispersion_from_log(params, s) + depth


def bound_state_energy(params: SystemParams, tol: float = RESIDUAL_TOL) -> BoundStateResult:
    """Solve for the unique negative-energy root of the bound-state equation.

    The bracket starts at ``E = -omega0`` (expanded downward by factors of 4
    until ``F > 0``) and ``E = -1e-12 omega0`` (pushed toward zero until
    ``F < 0``). The root is then polished by a bisection/secant hybrid until
    ``|F| <= 1e-3 tol * omega0``, or to within ``tol`` once the bracket has
    collapsed to a few ulps.

    Raises
    ------
    ParameterError
        If ``gamma0 <= 0``.
    BracketError
        If either bracket end fails to change sign within the expansion cap.
    """
    if not params.gamma0 > 0:
        raise ParameterError("bound state requires gamma0 > 0")
    def f(s):
        return _f_log(params, s)

    target = tol * params.omega0
    # polish well past the tolerance so the root survives rounding when tabulated
    polish = POLISH_FACTOR * target

    # larger s is deeper binding: F > 0 on the deep side, F < 0 on the shallow side
    s_deep, step = 0.0, math.log(EXPANSION)
    f_deep = f(s_deep)
    expansions = 0
    while f_deep <= 0.0:
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            raise BracketError(f"no F > 0 found down to E = -{params.omega0 * math.exp(s_deep):.3e}")
        s_deep += step
        f_deep = f(s_deep)
    s_shallow = math.log(SHALLOW_SEED)
    f_shallow = f(s_shallow)
    expansions = 0
    while f_shallow >= 0.0:
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            raise BracketError(f"no F < 0 found up to ln|E/omega0| = {s_shallow:.3e}")
        s_deep, f_deep = s_shallow, f_shallow
        s_shallow *= 2.0
        f_shallow = f(s_shallow)

    # Illinois false position: secant steps inside the bracket, with the
    # stale endpoint's value halved so the bracket keeps shrinking.
    lo, hi, flo, fhi = s_shallow, s_deep, f_shallow, f_deep
    side = 0
    for iteration in range(1, MAX_ITER + 1):
        x = (lo * fhi - hi * flo) / (fhi - flo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = f(x)
        bracket = (lo, hi)
        if abs(fx) <= polish:
            break
        if abs(fx) <= target and hi - lo <= 8 * math.ulp(max(abs(lo), abs(hi))):
            break
        if fx < 0:
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
    else:
        raise NumericalError(f"bound-state iteration did not converge (|F| = {abs(fx):.3e})")

    energy = -params.omega0 * math.exp(x)
    e_lo = -params.omega0 * math.exp(bracket[1])
    e_hi = -params.omega0 * math.exp(bracket[0])
    return BoundStateResult(energy, abs(fx), (e_lo, e_hi), iteration, x)


@dataclass(frozen=True)
class ScanRow:
    gamma0: float
    n_atoms: int
    theta: float
    energy: float
    log_depth: float
    residual: float
    error: str = ""


def spectrum_scan(params_base: SystemParams, gamma0_grid, n_list) -> list[ScanRow]:
    """Bound-state energy over a ``gamma0 x N`` grid, rows ordered N-major.

    A failing grid point yields a row with ``error`` set and NaN values; the
    scan continues.
    """
    gamma0_grid, n_list = list(gamma0_grid), list(n_list)
    if not gamma0_grid or not n_list:
        raise ParameterError("scan grids must be non-empty")
    rows = []
    for n in n_list:
        for g in gamma0_grid:
            p = params_base.with_(gamma0=float(g), n_atoms=int(n))
            try:
                r = bound_state_energy(p)
            except (NumericalError, ParameterError) as exc:
                rows.append(ScanRow(float(g), int(n), p.theta, math.nan, math.nan, math.nan, str(exc)))
                continue
            rows.append(ScanRow(float(g), int(n), p.theta, r.energy, r.log_depth, r.residual))
    return rows
