"""Two V-type qutrits in independent Lorentzian reservoirs.

Closed-form non-Markovian propagators drive a single-qutrit Kraus channel
whose two-qutrit negativity is tracked next to the system-reservoir bound
state. A discretized-bath integrator checks the closed forms independently.
"""

from .boundstate import (BoundStateResult, bound_state_energy, dispersion_integral,
                         dispersion_quadrature, spectral_density, spectrum_scan)
from .channel import (KrausSet, apply_single, apply_two, density_from_amplitudes,
                      kraus_set)
from .entanglement import maximally_entangled, negativity, partial_transpose
from .errors import BracketError, NormDriftError, NumericalError, ParameterError
from .jacobi import Spectrum, hermitian_eigenvalues
from .oracle import DiscretizedBath, OracleTrajectory, build_bath, simulate
from .params import SystemParams
from .propagator import (AmplitudeState, PropagatorPair, d_pm, evolve_amplitudes, g12,
                         g_pm)

__all__ = [
    "AmplitudeState", "BoundStateResult", "BracketError", "DiscretizedBath", "KrausSet",
    "NormDriftError", "NumericalError", "OracleTrajectory", "ParameterError",
    "PropagatorPair", "Spectrum", "SystemParams", "apply_single", "apply_two",
    "bound_state_energy", "build_bath", "d_pm", "density_from_amplitudes",
    "dispersion_integral", "dispersion_quadrature", "evolve_amplitudes", "g12", "g_pm",
    "hermitian_eigenvalues", "kraus_set", "maximally_entangled", "negativity",
    "partial_transpose", "simulate", "spectral_density", "spectrum_scan",
]
