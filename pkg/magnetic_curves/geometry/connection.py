"""
Levi-Civita Connection
======================

Frame tables of the Levi-Civita connection for (H3, g1) and (H3, g2), the
contraction that turns frame components of a velocity into the covariant
acceleration, and a finite-difference Lie bracket of the frame fields used to
check torsion-freeness.

Every non-zero entry is +-(lambda/2) times a single frame vector, so the tables
store only the sign and the target index; lambda stays a runtime parameter.

    g1: D_{e1}e2 = D_{e2}e1 = (l/2) e3,   D_{e1}e3 = D_{e3}e1 = (l/2) e2,
        D_{e2}e3 = -D_{e3}e2 = (l/2) e1
    g2: D_{e1}e2 = -D_{e2}e1 = (l/2) e3,  D_{e1}e3 = D_{e3}e1 = (l/2) e2,
        D_{e2}e3 = D_{e3}e2 = -(l/2) e1
"""

import numpy as np

from magnetic_curves.exceptions import DomainError
from magnetic_curves.geometry.frames import (
    FrameVector,
    Metric,
    frame_components,
    frame_field,
    CoordPoint,
    CoordVelocity,
)

# (i, j) -> (sign, k) meaning D_{e_i} e_j = sign * (lambda / 2) * e_k
_TABLES = {
    Metric.G1: {
        (1, 2): (1.0, 3),
        (2, 1): (1.0, 3),
        (1, 3): (1.0, 2),
        (3, 1): (1.0, 2),
        (2, 3): (1.0, 1),
        (3, 2): (-1.0, 1),
    },
    # [e2, e3] = 0 for this frame, so D_{e2}e3 and D_{e3}e2 coincide
    Metric.G2: {
        (1, 2): (1.0, 3),
        (2, 1): (-1.0, 3),
        (1, 3): (1.0, 2),
        (3, 1): (1.0, 2),
        (2, 3): (-1.0, 1),
        (3, 2): (-1.0, 1),
    },
}


def connection_coeff(p, i, j):
    """
    Covariant derivative D_{e_i} e_j in frame components.

    Args:
        p: ModelParams
        i, j: Frame indices in {1, 2, 3}

    Returns:
        FrameVector

    Raises:
        DomainError: If an index is out of range
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise DomainError(f"frame indices must lie in 1..3, got ({i}, {j})")
    out = [0.0, 0.0, 0.0]
    entry = _TABLES[p.metric].get((i, j))
    if entry is not None:
        sign, k = entry
        out[k - 1] = sign * p.lam / 2.0
    return FrameVector(*out)


def connection_array(p):
    """
    All coefficients as an array G with G[i, j] = D_{e_(i+1)} e_(j+1).

    Returns:
        numpy array of shape (3, 3, 3)
    """
    table = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            table[i, j] = connection_coeff(p, i + 1, j + 1)
    return table


def covariant_derivative(p, a, da):
    """
    Frame components of D_t t for t = sum a_i e_i along a curve.

    Args:
        p: ModelParams
        a: Frame components of the velocity
        da: Time derivatives of those components

    Returns:
        FrameVector equal to da + sum_ij a_i a_j D_{e_i} e_j
    """
    a = np.asarray(a, dtype=float)
    acc = np.asarray(da, dtype=float) + np.einsum("i,j,ijk->k", a, a, connection_array(p))
    return FrameVector(*acc)


def lie_bracket(p, i, j, pt, h=1e-5):
    """
    Lie bracket [e_i, e_j] from the coordinate expressions of the frame,
    by central differences, returned in frame components.

    Args:
        p: ModelParams
        i, j: Frame indices in {1, 2, 3}
        pt: CoordPoint
        h: Finite-difference step

    Returns:
        FrameVector
    """
    base = np.array(pt, dtype=float)
    X = np.array(frame_field(p, i, pt))
    Y = np.array(frame_field(p, j, pt))

    def directional(field_index, direction):
        forward = np.array(frame_field(p, field_index, CoordPoint(*(base + h * direction))))
        backward = np.array(frame_field(p, field_index, CoordPoint(*(base - h * direction))))
        return (forward - backward) / (2.0 * h)

    bracket = directional(j, X) - directional(i, Y)
    return frame_components(p, pt, CoordVelocity(*(float(c) for c in bracket)))


def torsion(p, i, j, pt, h=1e-5):
    """D_{e_i}e_j - D_{e_j}e_i - [e_i, e_j]; vanishes for the Levi-Civita connection."""
    diff = np.array(connection_coeff(p, i, j)) - np.array(connection_coeff(p, j, i))
    return FrameVector(*(diff - np.array(lie_bracket(p, i, j, pt, h))))


