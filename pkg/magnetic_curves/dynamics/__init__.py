"""
Killing magnetic dynamics: the Lorentz system, its conserved quantities and integrators.
"""

from magnetic_curves.dynamics.lorentz import (
    CurveState,
    covariant_acceleration,
    first_integral,
    integral_offset,
    lorentz_force,
    lorentz_rhs,
    normalize_speed,
    speed,
)
from magnetic_curves.dynamics.integrator import (
    IntegratorConfig,
    Method,
    Trajectory,
    integrate,
    retrace,
)
