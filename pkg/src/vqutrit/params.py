"""Physical parameter bundle shared by every module.

All rates and frequencies are measured in units of the atomic transition
frequency ``omega0``; the two upper levels are degenerate and share one
decay rate ``gamma0``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from .errors import ParameterError


@dataclass(frozen=True)
class SystemParams:
    """Lorentzian-reservoir V-type system.

    Attributes
    ----------
    gamma0 : float
        Decay rate of each upper level.
    lam : float
        Spectral width of the Lorentzian coupling.
    omega0 : float
        Transition frequency, also the reservoir centre frequency.
    theta : float
        Cross-coupling (interference) strength between the two decay
        channels, 0 (perpendicular dipoles) to 1 (parallel dipoles).
    n_atoms : int
        Number of V-type atoms sharing one reservoir.
    """

    gamma0: float = 1.0
    lam: float = 0.8
    omega0: float = 1.0
    theta: float = 0.5
    n_atoms: int = 1

    def __post_init__(self):
        if not self.gamma0 >= 0.0:
            raise ParameterError(f"gamma0 must be >= 0, got {self.gamma0}")
        if not self.lam > 0.0:
            raise ParameterError(f"lambda must be > 0, got {self.lam}")
        if not self.omega0 > 0.0:
            raise ParameterError(f"omega0 must be > 0, got {self.omega0}")
        if not 0.0 <= self.theta <= 1.0:
            raise ParameterError(f"theta must lie in [0, 1], got {self.theta}")
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ParameterError(f"n_atoms must be a positive integer, got {self.n_atoms}")
        object.__setattr__(self, "n_atoms", int(self.n_atoms))

    @property
    def collective_coupling(self) -> float:
        """N(1 + theta) gamma0, the only combination the bound-state equation sees."""
        return self.n_atoms * (1.0 + self.theta) * self.gamma0

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)
