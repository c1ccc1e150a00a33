"""Exception types raised across the package."""


class ParameterError(ValueError):
    """A physical parameter or input state violates its invariants."""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge or lost accuracy."""


class BracketError(NumericalError):
    """Root bracketing exhausted its expansion budget."""


class NormDriftError(NumericalError):
    """Time integration drifted away from unitarity."""
