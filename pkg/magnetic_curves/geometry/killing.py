"""
Killing Vector Fields
=====================

The four Killing fields V1..V4 of each metric, in frame components, and a
finite-difference check that the Lie derivative of the metric along a field
vanishes.
"""

import logging
from enum import Enum

import numpy as np

from magnetic_curves.exceptions import DomainError
from magnetic_curves.geometry.frames import (
    CoordPoint,
    FrameVector,
    Metric,
    coord_components,
    metric_tensor,
)

logger = logging.getLogger(__name__)


class KillingId(str, Enum):
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"
    V4 = "V4"

    @classmethod
    def parse(cls, value):
        """Accept KillingId, 'V3', 'v3' or 3."""
        if isinstance(value, cls):
            return value
        text = str(value).strip().upper()
        if not text.startswith("V"):
            text = "V" + text
        try:
            return cls(text)
        except ValueError as e:
            raise DomainError(f"unknown Killing field {value!r}") from e


def killing_field(p, k, pt):
    """
    Frame components of the Killing field V_k at pt.

    Args:
        p: ModelParams
        k: KillingId (or anything KillingId.parse accepts)
        pt: CoordPoint

    Returns:
        FrameVector
    """
    k = KillingId.parse(k)
    lam = p.lam
    x, y = pt.x, pt.y
    if p.metric is Metric.G1:
        fields = {
            KillingId.V1: (1.0, 0.0, 0.0),
            KillingId.V2: (x, 1.0, 0.0),
            KillingId.V3: (-lam * y, 0.0, 1.0),
            KillingId.V4: (0.5 * (x * x - lam * lam * y * y), x, lam * y),
        }
    else:
        fields = {
            KillingId.V1: (0.0, 0.0, 1.0),
            KillingId.V2: (1.0, 0.0, x),
            KillingId.V3: (0.0, 1.0, -lam * y),
            KillingId.V4: (x, -lam * y, 0.5 * (x * x + lam * lam * y * y)),
        }
    return FrameVector(*fields[k])


def lie_derivative_residual(p, field_fn, pt, h=1e-5):
    """
    max_ij |(L_V g)_ij| at pt for a coordinate vector field.

    (L_V g)_ij = V^k d_k g_ij + g_kj d_i V^k + g_ik d_j V^k, with every
    derivative taken by central differences of step h.

    Args:
        p: ModelParams
        field_fn: Callable CoordPoint -> coordinate components (length 3)
        pt: CoordPoint
        h: Finite-difference step

    Returns:
        float
    """
    if not h > 0:
        raise DomainError(f"finite-difference step must be positive, got {h}")
    base = np.array(pt, dtype=float)
    V = np.asarray(field_fn(CoordPoint(*base)), dtype=float)
    g = metric_tensor(p, CoordPoint(*base))

    dg = np.empty((3, 3, 3))  # dg[k] = d_k g
    dV = np.empty((3, 3))  # dV[i, k] = d_i V^k
    for k in range(3):
        step = np.zeros(3)
        step[k] = h
        plus, minus = CoordPoint(*(base + step)), CoordPoint(*(base - step))
        dg[k] = (metric_tensor(p, plus) - metric_tensor(p, minus)) / (2.0 * h)
        dV[k] = (np.asarray(field_fn(plus), dtype=float) - np.asarray(field_fn(minus), dtype=float)) / (2.0 * h)

    lie = np.einsum("k,kij->ij", V, dg) + dV @ g + (dV @ g).T
    return float(np.max(np.abs(lie)))


def killing_residual(p, k, pt, h=1e-5):
    """
    Lie-derivative residual of V_k, its coordinate field taken from
    coord_components of killing_field. Of order h^2 for a true Killing field.
    """
    k = KillingId.parse(k)

    def coordinate_field(q):
        return coord_components(p, q, killing_field(p, k, q))

    residual = lie_derivative_residual(p, coordinate_field, pt, h)
    logger.debug("killing residual %s %s at %s: %.3e", p.metric.value, k.value, tuple(pt), residual)
    return residual


def max_killing_residual(p, k, points, h=1e-5):
    """Largest killing_residual of V_k over an iterable of (x, y, z) points."""
    return max(killing_residual(p, k, CoordPoint(*pt), h) for pt in points)
