"""
Lorentz Equation
================

The Killing magnetic equation D_t t = q V x t written as an explicit second
order system in the global coordinates (x, y, z), together with the speed and
the first integral coming from the third frame equation.

State vectors are ordered [x, y, z, x', y', z'].
"""

import math
from typing import NamedTuple

import numpy as np

from magnetic_curves.exceptions import DomainError
from magnetic_curves.geometry.frames import (
    CoordPoint,
    CoordVelocity,
    FrameVector,
    Metric,
    cross,
    frame_components,
    inner,
)
from magnetic_curves.geometry.killing import KillingId, killing_field


class CurveState(NamedTuple):
    """Position and velocity of a curve at parameter t."""

    t: float
    pos: CoordPoint
    vel: CoordVelocity

    def to_array(self):
        return np.array([*self.pos, *self.vel], dtype=float)

    @classmethod
    def from_array(cls, t, y):
        return cls(
            float(t),
            CoordPoint(float(y[0]), float(y[1]), float(y[2])),
            CoordVelocity(float(y[3]), float(y[4]), float(y[5])),
        )


def _vertical(pos, vel):
    # z' + x y', the e1 (g1) or e3 (g2) component of the velocity
    return vel.dz + pos.x * vel.dy


def covariant_acceleration(p, s, acc):
    """
    Frame components of D_t t for the curve through s with coordinate second
    derivatives acc = (x'', y'', z'').

    g1: ((z'+xy')', y'' + x'(z'+xy'), x''/l + l y'(z'+xy'))
    g2: (y'' - x'(z'+xy'), x''/l + l y'(z'+xy'), (z'+xy')')
    """
    xp, yp, _ = s.vel
    xpp, ypp, zpp = acc
    vert = _vertical(s.pos, s.vel)
    vert_dot = zpp + xp * yp + s.pos.x * ypp
    lam = p.lam
    if p.metric is Metric.G1:
        return FrameVector(vert_dot, ypp + xp * vert, xpp / lam + lam * yp * vert)
    return FrameVector(ypp - xp * vert, xpp / lam + lam * yp * vert, vert_dot)


def lorentz_force(p, k, s, charge=1.0):
    """q V_k x t in frame components."""
    field = killing_field(p, k, s.pos)
    tangent = frame_components(p, s.pos, s.vel)
    return FrameVector(*(charge * c for c in cross(field, tangent)))


def lorentz_rhs(p, k, s, charge=1.0):
    """
    Time derivative of the state [x, y, z, x', y', z'] under D_t t = q V_k x t.

    With w = q V_k x t the second derivatives are solved in the order y'',
    x'', z'' (the frame map is triangular in (z'+xy', y', x')):

        g1: y'' = w2 - x'(z'+xy'),  x'' = l w3 - l^2 y'(z'+xy')
        g2: y'' = w1 + x'(z'+xy'),  x'' = l w2 - l^2 y'(z'+xy')
        both: z'' = w_vertical - x'y' - x y''

    Args:
        p: ModelParams
        k: KillingId
        s: CurveState
        charge: Multiplier q of the magnetic field; 0 gives geodesics

    Returns:
        numpy array of length 6
    """
    w = lorentz_force(p, k, s, charge)
    xp, yp, zp = s.vel
    vert = _vertical(s.pos, s.vel)
    lam = p.lam
    if p.metric is Metric.G1:
        ypp = w.a2 - xp * vert
        xpp = lam * w.a3 - lam * lam * yp * vert
        w_vert = w.a1
    else:
        ypp = w.a1 + xp * vert
        xpp = lam * w.a2 - lam * lam * yp * vert
        w_vert = w.a3
    zpp = w_vert - xp * yp - s.pos.x * ypp
    return np.array([xp, yp, zp, xpp, ypp, zpp])


def integral_offset(p, k, x, y):
    """
    Position-dependent part of the first integral: I = (z' + x y') + offset.

    g1: V1: 0; V2: -x/l; V3: +y; V4: -x^2/(2l) + l y^2/2
    g2: V1: 0; V2: +x/l; V3: -y; V4: +x^2/(2l) + l y^2/2

    Works elementwise on arrays.
    """
    k = KillingId.parse(k)
    lam = p.lam
    sign = 1.0 if p.metric is Metric.G1 else -1.0
    if k is KillingId.V1:
        return 0.0 * x
    if k is KillingId.V2:
        return -sign * x / lam
    if k is KillingId.V3:
        return sign * y
    return -sign * x * x / (2.0 * lam) + lam * y * y / 2.0


def first_integral(p, k, s, charge=1.0):
    """
    Conserved quantity I(s) = z' + x y' + q integral_offset(x, y) of the
    system with field q V_k. Works elementwise when s holds arrays.
    """
    return _vertical(s.pos, s.vel) + charge * integral_offset(p, k, s.pos.x, s.pos.y)


def speed(p, s):
    """Causal square g(t, t) of the velocity."""
    a = frame_components(p, s.pos, s.vel)
    return inner(a, a)


def normalize_speed(p, s):
    """
    Rescale the velocity so that |g(t, t)| = 1.

    Raises:
        DomainError: If the velocity is lightlike
    """
    sq = speed(p, s)
    if sq == 0.0 or not math.isfinite(sq):
        raise DomainError("cannot normalize a lightlike or non-finite velocity")
    scale = 1.0 / math.sqrt(abs(sq))
    return CurveState(s.t, s.pos, CoordVelocity(*(scale * c for c in s.vel)))
