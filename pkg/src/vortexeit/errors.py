"""Exception types raised by the propagation routines."""


class VortexEITError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(VortexEITError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateVelocity(VortexEITError):
    """The slow eigen-velocity vanishes (double-lambda limit)."""


class SingularRabi(VortexEITError):
    """The control Rabi matrix is not invertible."""


class SingularElimination(VortexEITError):
    """The exact excited-state elimination is ill-conditioned."""


class NoSolution(VortexEITError):
    """No detuning satisfies the requested phase condition."""


class UnsupportedDetuning(VortexEITError, ValueError):
    """Nonzero two-photon detuning passed to the analytic path."""
