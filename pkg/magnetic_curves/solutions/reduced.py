"""
Reduced Equations
=================

For the V2 and V3 fields the first integral and one of the planar equations
integrate once, leaving a single autonomous equation u'' = f(u) for one
coordinate (x for V2, y for V3). This module holds those equations, their
quartic energies at c = 0, and the lift of a reduced solution back to a full
3-D trajectory.

    g1 V2 (u = x): u'' = 2u^3 + u + l c (3u^2 + c l u + 1),   y' = -x^2/l - c x
    g1 V3 (u = y): u'' = l^2 u (u - c)(2u - c) + c - u,      x' = l^2 y^2 - l^2 c y
    g2 V2 (u = x): u'' = (l c - u)(2u^2 - l c u - 1),        y' = -x^2/l + c x
    g2 V3 (u = y): u'' = u + c - l^2 u (u + c)(2u + c),      x' = -l^2 y^2 - l^2 c y

The printed variant keeps u'' = -(2/l)u^3 + u - c(l u^2 - c u + l) for g2 V2
and u'' = -2 l^2 u^3 + u + c for g2 V3.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from magnetic_curves.dynamics.integrator import Trajectory
from magnetic_curves.exceptions import DomainError
from magnetic_curves.geometry.frames import Metric, ModelParams
from magnetic_curves.geometry.killing import KillingId
from magnetic_curves.solutions.closedform import Variant

logger = logging.getLogger(__name__)


class ReducedId(str, Enum):
    G1_V2 = "g1-v2"
    G1_V3 = "g1-v3"
    G2_V2 = "g2-v2"
    G2_V3 = "g2-v3"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        try:
            return cls(text)
        except ValueError as e:
            raise DomainError(f"unknown reduced equation {value!r}") from e

    @property
    def metric(self):
        return Metric.G1 if self.value.startswith("g1") else Metric.G2

    @property
    def killing(self):
        return KillingId.V2 if self.value.endswith("v2") else KillingId.V3


@dataclass(frozen=True)
class ReducedEquation:
    """
    One of the four reduced equations.

    Attributes:
        which: ReducedId
        lam: lambda > 0
        c: First-integral constant
        variant: Variant.DERIVATION (re-derived) or Variant.AS_PRINTED
    """

    which: ReducedId
    lam: float = 1.0
    c: float = 0.0
    variant: Variant = Variant.DERIVATION

    def __post_init__(self):
        object.__setattr__(self, "which", ReducedId.parse(self.which))
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "c", float(self.c))
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be a positive real, got {self.lam}")
        if not math.isfinite(self.c):
            raise DomainError(f"c must be finite, got {self.c}")

    @property
    def params(self):
        return ModelParams(self.which.metric, self.lam)

    @property
    def killing(self):
        return self.which.killing

    @property
    def variable(self):
        """Name of the reduced coordinate."""
        return "x" if self.killing is KillingId.V2 else "y"

    def quartic_coefficients(self):
        """
        (q4, q2, q0) with u'' = 2 q4 u^3 + q2 u at c = 0, so that
        u'^2 - (q4 u^4 + q2 u^2 + q0) is conserved.
        """
        lam2 = self.lam * self.lam
        if self.which is ReducedId.G1_V2:
            return 1.0, 1.0, 0.0
        if self.which is ReducedId.G1_V3:
            return lam2, -1.0, 0.0
        if self.which is ReducedId.G2_V3:
            return -lam2, 1.0, 0.0
        if self.variant is Variant.AS_PRINTED:
            return -1.0 / self.lam, 1.0, 0.0
        return -1.0, 1.0, 0.0


def reduced_rhs(r, state):
    """
    Second derivative u'' of the reduced coordinate.

    Args:
        r: ReducedEquation
        state: (u, u'); arrays are evaluated elementwise

    Returns:
        u''
    """
    u = state[0]
    lam, c = r.lam, r.c
    lam2 = lam * lam
    which = r.which
    if which is ReducedId.G1_V2:
        return 2 * u**3 + u + lam * c * (3 * u**2 + c * lam * u + 1)
    if which is ReducedId.G1_V3:
        return lam2 * u * (u - c) * (2 * u - c) + c - u
    if r.variant is Variant.AS_PRINTED:
        if which is ReducedId.G2_V2:
            return -(2.0 / lam) * u**3 + u - c * (lam * u**2 - c * u + lam)
        return -2 * lam2 * u**3 + u + c
    if which is ReducedId.G2_V2:
        return (lam * c - u) * (2 * u**2 - lam * c * u - 1)
    return u + c - lam2 * u * (u + c) * (2 * u + c)


def companion_rates(r, u, up):
    """
    Companion velocity, its derivative, the vertical component s = z' + x y'
    and ds/dt along a reduced solution (elementwise).
    """
    lam, c = r.lam, r.c
    lam2 = lam * lam
    which = r.which
    if which is ReducedId.G1_V2:
        w = -u**2 / lam - c * u
        dw = -(2 * u / lam + c) * up
        s, ds = u / lam + c, up / lam
    elif which is ReducedId.G1_V3:
        w = lam2 * u**2 - lam2 * c * u
        dw = lam2 * (2 * u - c) * up
        s, ds = c - u, -up
    elif which is ReducedId.G2_V2:
        w = -u**2 / lam + c * u
        dw = (-2 * u / lam + c) * up
        s, ds = c - u / lam, -up / lam
    else:
        w = -lam2 * u**2 - lam2 * c * u
        dw = -lam2 * (2 * u + c) * up
        s, ds = u + c, up
    return w, dw, s, ds


def lift_reduced(r, t, u, up, z0=0.0, companion0=0.0):
    """
    Lift a sampled reduced solution to a 3-D Trajectory.

    The companion coordinate (y for V2, x for V3) is the antiderivative of
    its rate, integrated with a cubic Hermite spline through the rate samples
    and their exact derivatives; z is obtained the same way from
    z' = s - x y'.

    Args:
        r: ReducedEquation
        t: Ascending sample times
        u, up: Reduced coordinate and its derivative at t
        z0: z at t[0]
        companion0: Companion coordinate at t[0]

    Returns:
        Trajectory with meta["method"] == "lift"
    """
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    up = np.asarray(up, dtype=float)
    if t.ndim != 1 or len(t) < 2 or u.shape != t.shape or up.shape != t.shape:
        raise DomainError("lift needs matching 1-D arrays with at least two samples")
    if np.any(np.diff(t) <= 0):
        raise DomainError("lift grid must be strictly increasing")
    upp = reduced_rhs(r, (u, up))

    w, dw, s, ds = companion_rates(r, u, up)
    companion = companion0 + CubicHermiteSpline(t, w, dw).antiderivative()(t)

    if r.killing is KillingId.V2:
        x, y, xp, yp, xpp, ypp = u, companion, up, w, upp, dw
    else:
        x, y, xp, yp, xpp, ypp = companion, u, w, up, dw, upp

    zp = s - x * yp
    zpp = ds - xp * yp - x * ypp
    z = z0 + CubicHermiteSpline(t, zp, zpp).antiderivative()(t)

    states = np.column_stack([x, y, z, xp, yp, zp])
    logger.debug("lifted %s on %d samples", r.which.value, len(t))
    return Trajectory(
        params=r.params,
        killing=r.killing,
        t=t,
        states=states,
        meta={"method": "lift", "reduced": r.which.value, "variant": r.variant.value, "c": r.c},
    )
