"""Figure-level experiments as tables of rows.

Each producer returns a list of ordered dicts, one per grid point, in a
deterministic grid order independent of how many workers evaluated it.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .boundstate import spectrum_scan
from .channel import apply_two, kraus_set
from .entanglement import maximally_entangled, negativity
from .errors import NumericalError, ParameterError
from .params import SystemParams
from .propagator import g_pm, mixing_pair

_RHO0 = maximally_entangled()


class GridPointError(NumericalError):
    """A module error raised while evaluating one grid point."""


def evolved_state(params: SystemParams, t: float, rho0=None) -> np.ndarray:
    """Two-qutrit state after time ``t``, each qutrit in its own reservoir."""
    g_plus, g_minus = g_pm(params, t)
    g1, g2 = mixing_pair(g_plus, g_minus, params.n_atoms)
    return apply_two(_RHO0 if rho0 is None else rho0, kraus_set(g1, g2))


def negativity_at(params: SystemParams, t: float) -> float:
    return negativity(evolved_state(params, t))


def _curve(args):
    params, times = args
    g_plus, g_minus = g_pm(params, np.asarray(times, dtype=float))
    g1, g2 = mixing_pair(np.atleast_1d(g_plus), np.atleast_1d(g_minus), params.n_atoms)
    out = []
    for t, a, b in zip(times, g1, g2):
        try:
            out.append(negativity(apply_two(_RHO0, kraus_set(a, b))))
        except (NumericalError, ParameterError) as exc:
            raise GridPointError(f"{exc} at t={t}, params={params}") from exc
    return out


def _run(func, tasks, workers: int):
    if workers <= 1 or len(tasks) < 2:
        return [func(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks))


def _base(cfg) -> SystemParams:
    return SystemParams(gamma0=cfg.gamma0, lam=cfg.lam, omega0=cfg.omega0,
                        theta=cfg.theta_grid[0], n_atoms=cfg.n_list[0])


def negativity_dynamics(cfg) -> list[dict]:
    """Negativity versus time for every ``(theta, N)`` pair, starting from the
    maximally entangled two-qutrit state."""
    base = _base(cfg)
    combos = list(itertools.product(cfg.theta_grid, cfg.n_list))
    tasks = [(base.with_(theta=th, n_atoms=n), list(cfg.t_grid)) for th, n in combos]
    curves = _run(_curve, tasks, cfg.workers)
    rows = []
    for (theta, n), values in zip(combos, curves):
        for t, value in zip(cfg.t_grid, values):
            rows.append({"t": float(t), "n_atoms": int(n), "theta": float(theta),
                         "negativity": value, "gamma0": base.gamma0,
                         "lambda": base.lam, "omega0": base.omega0})
    return rows


def negativity_map(cfg) -> list[dict]:
    """Negativity at a fixed time over the ``gamma0 x theta x N`` grid."""
    base = _base(cfg)
    combos = list(itertools.product(cfg.n_list, cfg.theta_grid))
    tasks = []
    for n, theta in combos:
        for g in cfg.gamma0_grid:
            tasks.append((base.with_(gamma0=g, theta=theta, n_atoms=n), [cfg.t]))
    values = _run(_curve, tasks, cfg.workers)
    rows = []
    for (params, _), value in zip(tasks, values):
        rows.append({"gamma0": params.gamma0, "theta": params.theta, "n_atoms": params.n_atoms,
                     "negativity": value[0], "t": float(cfg.t),
                     "lambda": params.lam, "omega0": params.omega0})
    return rows


def _scan(args):
    base, gammas, n_list = args
    return spectrum_scan(base, gammas, n_list)


def bound_spectrum(cfg) -> list[dict]:
    """Bound-state energy over ``gamma0`` for each ``theta`` and ``N``.

    ``log_depth`` is ``ln(-E/omega0)`` and carries the depth when ``E`` is
    below the smallest representable double; failed points carry ``error``.
    """
    base = _base(cfg)
    tasks = [(base.with_(theta=th), list(cfg.gamma0_grid), [n])
             for th in cfg.theta_grid for n in cfg.n_list]
    scans = _run(_scan, tasks, cfg.workers)
    rows = []
    for scan in scans:
        for r in scan:
            rows.append({"gamma0": r.gamma0, "n_atoms": r.n_atoms, "energy": r.energy,
                         "theta": r.theta, "log_depth": r.log_depth, "residual": r.residual,
                         "lambda": base.lam, "omega0": base.omega0, "error": r.error})
    return rows
