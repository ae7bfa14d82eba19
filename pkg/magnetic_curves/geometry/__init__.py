"""
Geometry of the Lorentzian Heisenberg group: frames, connection and Killing fields.
"""

from magnetic_curves.geometry.frames import (
    CoordPoint,
    CoordVelocity,
    FrameVector,
    Metric,
    ModelParams,
    coord_components,
    cross,
    frame_components,
    frame_field,
    frame_matrix,
    inner,
    metric_tensor,
)
from magnetic_curves.geometry.connection import (
    connection_array,
    connection_coeff,
    covariant_derivative,
    lie_bracket,
    torsion,
)
from magnetic_curves.geometry.killing import (
    KillingId,
    killing_field,
    killing_residual,
    lie_derivative_residual,
    max_killing_residual,
)
