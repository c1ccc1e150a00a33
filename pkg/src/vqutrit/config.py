"""Run configuration: per-experiment defaults plus config-file and grid parsing.

Precedence is command-line flag, then config file, then the experiment
default. Config files are flat ``key = value`` lines whose keys are the
long flag names (``theta-grid = 0:1:21``); ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .errors import ParameterError
from .params import SystemParams

EXPERIMENTS = ("negativity-dynamics", "bound-spectrum", "negativity-map", "validate")
FORMATS = ("csv", "json")
OUTPUT_DIR_ENV = "VQUTRIT_OUTPUT_DIR"


def parse_grid(text, integer: bool = False) -> list:
    """``a:b:n`` (n evenly spaced points, inclusive), a comma list, or a scalar."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterError(f"grid {text!r} must look like start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ParameterError(f"grid {text!r} has no points")
        values = np.linspace(start, stop, count).tolist()
    else:
        values = [float(v) for v in text.split(",") if v.strip()]
    if integer:
        if any(v != int(v) for v in values):
            raise ParameterError(f"grid {text!r} must contain integers")
        values = [int(v) for v in values]
    if not values:
        raise ParameterError("grids must be non-empty")
    return values


@dataclass
class RunConfig:
    experiment: str
    gamma0: float = 1.0
    lam: float = 0.8
    omega0: float = 1.0
    theta_grid: list = field(default_factory=lambda: [0.5])
    n_list: list = field(default_factory=lambda: [1])
    t_grid: list = field(default_factory=lambda: [0.0])
    gamma0_grid: list = field(default_factory=lambda: [1.0])
    t: float = 10.0
    output: str | None = None
    format: str = "csv"
    modes: int = 4000
    bandwidth: float | None = None
    dt: float | None = None
    cutoff_at_zero: bool = False
    t_end: float = 10.0
    samples: int = 200
    seed: int = 0
    workers: int = 1
    from_file: str | None = None

    def validate(self):
        if self.experiment not in EXPERIMENTS:
            raise ParameterError(f"unknown experiment {self.experiment!r}")
        if self.format not in FORMATS:
            raise ParameterError(f"unknown output format {self.format!r}")
        for name in ("theta_grid", "n_list", "t_grid", "gamma0_grid"):
            if not getattr(self, name):
                raise ParameterError(f"{name} must be non-empty")
        # every grid point must be a valid parameter set
        for theta in self.theta_grid:
            for n in self.n_list:
                SystemParams(self.gamma0, self.lam, self.omega0, theta, n)
        for g in self.gamma0_grid:
            SystemParams(g, self.lam, self.omega0, self.theta_grid[0], self.n_list[0])
        if any(t < 0 for t in self.t_grid) or self.t < 0 or self.t_end <= 0:
            raise ParameterError("times must be non-negative")
        if self.modes < 2 or self.samples < 1 or self.workers < 1:
            raise ParameterError("modes, samples, workers: each must be positive")
        return self

    def echo(self) -> dict:
        return asdict(self)


# Shipped defaults. Grid resolutions are choices, not recovered values.
DEFAULTS = {
    "negativity-dynamics": dict(gamma0=1.0, lam=0.8, theta_grid=[0.5, 1.0], n_list=[1, 3, 6, 9],
                                t_grid=np.linspace(0.0, 50.0, 501).tolist()),
    "bound-spectrum": dict(lam=0.8, theta_grid=[0.5, 1.0], n_list=list(range(1, 11)),
                           gamma0_grid=np.linspace(0.01, 1.0, 100).tolist()),
    "negativity-map": dict(lam=0.8, t=10.0, n_list=[1, 3, 6, 9],
                           theta_grid=np.linspace(0.0, 1.0, 21).tolist(),
                           gamma0_grid=np.linspace(0.0, 1.0, 21).tolist()),
    "validate": dict(gamma0=1.0, lam=0.8, theta_grid=[0.5], n_list=[1],
                     t_grid=np.linspace(0.0, 10.0, 11).tolist()),
}

# key (flag spelling) -> (field name, converter)
_KEYS = {
    "gamma0": ("gamma0", float),
    "lambda": ("lam", float),
    "omega0": ("omega0", float),
    "theta": ("theta_grid", lambda v: [float(v)]),
    "theta-grid": ("theta_grid", parse_grid),
    "n-atoms": ("n_list", lambda v: [int(v)]),
    "n-list": ("n_list", lambda v: parse_grid(v, integer=True)),
    "t": ("t", float),
    "t-grid": ("t_grid", parse_grid),
    "gamma0-grid": ("gamma0_grid", parse_grid),
    "output": ("output", str),
    "format": ("format", str),
    "modes": ("modes", int),
    "bandwidth": ("bandwidth", float),
    "dt": ("dt", float),
    "cutoff-at-zero": ("cutoff_at_zero", lambda v: str(v).strip().lower() in ("1", "true", "yes", "on")),
    "t-end": ("t_end", float),
    "samples": ("samples", int),
    "seed": ("seed", int),
    "workers": ("workers", int),
    "from": ("from_file", str),
}


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` file into raw string settings."""
    settings = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.lstrip("-").replace("_", "-")
            if key not in _KEYS:
                raise ParameterError(f"{path}:{lineno}: unknown key {key!r}")
            settings[key] = value
    return settings


def _apply(values: dict, settings: dict):
    # scalar spellings first so an explicit grid wins over its scalar twin
    for key in sorted(settings, key=lambda k: k in ("theta-grid", "n-list", "t-grid", "gamma0-grid")):
        name, convert = _KEYS[key]
        try:
            values[name] = convert(settings[key])
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"bad value for {key}: {settings[key]!r}") from exc


def build_config(experiment: str, file_settings: dict | None = None,
                 flag_settings: dict | None = None) -> RunConfig:
    """Layer flag settings over config-file settings over the defaults."""
    if experiment not in EXPERIMENTS:
        raise ParameterError(f"unknown experiment {experiment!r}")
    values = dict(DEFAULTS[experiment])
    merged = {**(file_settings or {}), **(flag_settings or {})}
    _apply(values, file_settings or {})
    _apply(values, flag_settings or {})
    # a scalar stands in for the grid it would otherwise leave at its default
    if experiment in ("bound-spectrum", "negativity-map") and "gamma0" in merged \
            and "gamma0-grid" not in merged:
        values["gamma0_grid"] = [values["gamma0"]]
    if experiment == "negativity-dynamics" and "t" in merged and "t-grid" not in merged:
        values["t_grid"] = [values["t"]]
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(experiment=experiment, **{k: v for k, v in values.items() if k in known}).validate()
