"""
Residual and conservation checks for closed-form and integrated curves.
"""

from magnetic_curves.verification.residual import (
    Drift,
    ResidualReport,
    check_family,
    check_trajectory,
    compare,
    conservation_report,
    finite_difference_accelerations,
    ode_residual,
    residual_profile,
)
