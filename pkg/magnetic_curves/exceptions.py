"""
Exceptions
==========

Error hierarchy shared by the geometry, dynamics, solution and verification
modules. The CLI maps these onto exit codes.
"""


class MagneticCurvesError(Exception):
    """Base class for all package errors."""


class DomainError(MagneticCurvesError, ValueError):
    """A parameter lies outside the domain of an operation or family."""


class Unsupported(MagneticCurvesError):
    """The requested combination has no implementation (e.g. c != 0 energies)."""


class IntegrationError(MagneticCurvesError):
    """Raised when numerical integration cannot continue."""


class StepUnderflow(IntegrationError):
    """The adaptive step fell below dt_min or stopped advancing t."""


class IntegratorOverflow(IntegrationError):
    """The state became non-finite or left the max_norm ball."""


class StepLimitExceeded(IntegrationError):
    """The adaptive integrator used up max_steps before t_end."""


class QuadratureFailure(MagneticCurvesError):
    """Adaptive quadrature did not reach the requested tolerance."""


class UnboundedOrbit(MagneticCurvesError):
    """A reduced solution escapes to infinity before the end of the grid."""


class GridTooCoarse(MagneticCurvesError):
    """A finite-difference stencil does not fit on the sampled grid."""


class ParamMismatch(MagneticCurvesError):
    """Two curves being compared belong to different models or time grids."""


class UnknownFamily(MagneticCurvesError, KeyError):
    """No closed-form family is registered under the requested name."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown family"
