"""
Frames and Metrics
==================

Orthonormal frames of the two non-flat left-invariant Lorentzian metrics on
the Heisenberg group H3, conversion between coordinate velocities and frame
components, the Lorentzian inner and vector products, and the coordinate
matrix of the metric.

    g1 = -dx^2/lambda^2 + dy^2 + (x dy + dz)^2
         e1 = d/dz,  e2 = d/dy - x d/dz,  e3 = lambda d/dx

    g2 = dx^2/lambda^2 + dy^2 - (x dy + dz)^2
         e1 = d/dy - x d/dz,  e2 = lambda d/dx,  e3 = d/dz

In both frames e3 is timelike, so the frame inner product is diag(1, 1, -1).
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from magnetic_curves.exceptions import DomainError

# Inner-product signature of the frame (e1, e2, e3)
SIGNATURE = np.array([1.0, 1.0, -1.0])


class Metric(str, Enum):
    """Which non-flat Lorentzian metric the Heisenberg group carries."""

    G1 = "g1"
    G2 = "g2"


@dataclass(frozen=True)
class ModelParams:
    """
    Metric choice plus the positive parameter lambda.

    Attributes:
        metric: Metric.G1 or Metric.G2 (the strings "g1"/"g2" are accepted)
        lam: The dimensionless metric parameter lambda > 0
    """

    metric: Metric
    lam: float

    def __post_init__(self):
        try:
            metric = Metric(str(getattr(self.metric, "value", self.metric)).lower())
        except ValueError as e:
            raise DomainError(f"unknown metric {self.metric!r}") from e
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "lam", float(self.lam))
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be a positive real, got {self.lam}")


class CoordPoint(NamedTuple):
    """Global-chart coordinates (x, y, z)."""

    x: float
    y: float
    z: float = 0.0


class CoordVelocity(NamedTuple):
    """Coordinate derivatives (x', y', z')."""

    dx: float
    dy: float
    dz: float


class FrameVector(NamedTuple):
    """Components with respect to the orthonormal frame (e1, e2, e3)."""

    a1: float
    a2: float
    a3: float


def frame_components(p, pt, v):
    """
    Express a coordinate velocity in the orthonormal frame.

    g1: t = (z' + x y') e1 + y' e2 + (x'/lambda) e3
    g2: t = y' e1 + (x'/lambda) e2 + (z' + x y') e3

    Args:
        p: ModelParams
        pt: CoordPoint at which the vector is attached (only x matters)
        v: CoordVelocity

    Returns:
        FrameVector
    """
    vertical = v.dz + pt.x * v.dy
    if p.metric is Metric.G1:
        return FrameVector(vertical, v.dy, v.dx / p.lam)
    return FrameVector(v.dy, v.dx / p.lam, vertical)


def coord_components(p, pt, a):
    """
    Inverse of frame_components: frame components back to (x', y', z').

    Args:
        p: ModelParams
        pt: CoordPoint at which the vector is attached
        a: FrameVector

    Returns:
        CoordVelocity
    """
    if p.metric is Metric.G1:
        return CoordVelocity(p.lam * a.a3, a.a2, a.a1 - pt.x * a.a2)
    return CoordVelocity(p.lam * a.a2, a.a1, a.a3 - pt.x * a.a1)


def frame_matrix(p, pt):
    """
    Matrix E with frame_components(v) = E @ v for coordinate velocities v.

    Returns:
        numpy array of shape (3, 3)
    """
    x = pt.x
    inv = 1.0 / p.lam
    if p.metric is Metric.G1:
        return np.array([[0.0, x, 1.0], [0.0, 1.0, 0.0], [inv, 0.0, 0.0]])
    return np.array([[0.0, 1.0, 0.0], [inv, 0.0, 0.0], [0.0, x, 1.0]])


def frame_field(p, i, pt):
    """Coordinate expression of the frame vector e_i (i in 1..3) at pt."""
    if i not in (1, 2, 3):
        raise DomainError(f"frame index must be 1, 2 or 3, got {i}")
    unit = [0.0, 0.0, 0.0]
    unit[i - 1] = 1.0
    return coord_components(p, pt, FrameVector(*unit))


def inner(a, b):
    """Lorentzian inner product of frame vectors, signature (+, +, -)."""
    return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]


def cross(a, b):
    """
    Lorentzian vector product of frame vectors.

    Componentwise (x2 y3 - x3 y2, x3 y1 - x1 y3, x2 y1 - x1 y2), which makes
    inner(cross(a, b), c) the determinant of the rows a, b, c.
    """
    return FrameVector(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[1] * b[0] - a[0] * b[1],
    )


def metric_tensor(p, pt):
    """
    Coordinate-basis matrix of g1 or g2 at pt (rows/columns ordered x, y, z).

    Returns:
        Symmetric numpy array of shape (3, 3)
    """
    x = pt.x
    inv2 = 1.0 / (p.lam * p.lam)
    if p.metric is Metric.G1:
        return np.array(
            [[-inv2, 0.0, 0.0], [0.0, 1.0 + x * x, x], [0.0, x, 1.0]]
        )
    return np.array([[inv2, 0.0, 0.0], [0.0, 1.0 - x * x, -x], [0.0, -x, -1.0]])
