"""Exception types shared across the simulator."""


class SqblochError(Exception):
    """Base class for all simulator errors."""


class ConfigError(SqblochError):
    """A configuration document failed validation. Message names the field."""


class NumericalError(SqblochError):
    """Base class for failures inside a numerical routine."""


class DispersiveRegimeViolation(NumericalError):
    """Excited-state population grew beyond the dispersive-regime guard.

    Raised when rho_ee / rho11(0) exceeds 0.1 during integration; past that
    point the field-amplitude equation approaches its pole and the
    semiclassical factorization is no longer trustworthy.
    """


class StepSizeUnderflow(NumericalError):
    """The adaptive integrator could not meet the tolerance with a usable step."""


class AnsatzBreakdown(NumericalError):
    """The pulse-overlap exponent overflowed; the reported coherence is meaningless."""


class NoBracket(NumericalError):
    """Root bracket endpoints do not straddle the requested phase target."""


class NonConvergence(NumericalError):
    """Iterative root refinement exhausted its step budget."""
