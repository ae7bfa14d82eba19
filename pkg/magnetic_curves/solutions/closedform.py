"""
Closed-Form Families
====================

Analytic Killing magnetic curves. Each family is available in two variants:

- AS_PRINTED: the formulas exactly as they are usually quoted, typos included.
- DERIVATION: x(t), y(t) from the linear systems and z(t) from the exact
  antiderivative of z' = c - offset(x, y) - x y'.

Every family exposes position, velocity and acceleration analytically so the
residual checker can evaluate D_t t - V x t without finite differences.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Tuple

import numpy as np

from magnetic_curves.dynamics.lorentz import CurveState
from magnetic_curves.exceptions import DomainError, UnknownFamily
from magnetic_curves.geometry.frames import (
    CoordPoint,
    CoordVelocity,
    Metric,
    ModelParams,
)
from magnetic_curves.geometry.killing import KillingId

logger = logging.getLogger(__name__)


class FamilyId(str, Enum):
    G1_V1_LINEAR = "g1-v1-linear"
    G1_V1_EXP = "g1-v1-exp"
    G1_V4_SPECIAL = "g1-v4-special"
    G2_V1_LINEAR = "g2-v1-linear"
    G2_V1_TRIG = "g2-v1-trig"
    G2_V4_CIRCULAR = "g2-v4-circular"
    G2_V4_ROTATING = "g2-v4-rotating"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if text in (member.value, member.name.lower().replace("_", "-")):
                return member
        raise UnknownFamily(f"unknown family {value!r}; known: {', '.join(m.value for m in cls)}")


class Variant(str, Enum):
    AS_PRINTED = "as-printed"
    DERIVATION = "derivation"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        aliases = {
            "as-printed": cls.AS_PRINTED,
            "printed": cls.AS_PRINTED,
            "derivation": cls.DERIVATION,
            "derivation-consistent": cls.DERIVATION,
            "derived": cls.DERIVATION,
        }
        try:
            return aliases[text]
        except KeyError as e:
            raise DomainError(f"unknown variant {value!r}") from e


class FamilyInfo(NamedTuple):
    metric: Metric
    killing: KillingId
    description: str
    default_lam: float
    default_c: Optional[float]
    default_k: Tuple[float, ...]
    default_t_end: float


FAMILIES = {
    FamilyId.G1_V1_LINEAR: FamilyInfo(
        Metric.G1, KillingId.V1,
        "g1, V1, c = -1/lambda: x, y linear in t, z quadratic",
        1.0, None, (1.0, 0.0, 1.0, 0.0, 0.0), 1.0,
    ),
    FamilyId.G1_V1_EXP: FamilyInfo(
        Metric.G1, KillingId.V1,
        "g1, V1, lambda c + 1 != 0: x, y combinations of exp(+-(lambda c + 1) t)",
        1.0, 0.0, (0.5, 0.3, 0.2, -0.1, 0.0), 1.0,
    ),
    FamilyId.G1_V4_SPECIAL: FamilyInfo(
        Metric.G1, KillingId.V4,
        "g1, V4, c = 0: x = lambda (k1 t + k2), y = k1 t + k2",
        1.0, 0.0, (2.0, 1.0, 0.0, 0.0, 0.0), 1.0,
    ),
    FamilyId.G2_V1_LINEAR: FamilyInfo(
        Metric.G2, KillingId.V1,
        "g2, V1, c = 1/lambda: x, y linear in t, z quadratic",
        1.0, None, (1.0, 0.0, 1.0, 0.0, 0.0), 1.0,
    ),
    FamilyId.G2_V1_TRIG: FamilyInfo(
        Metric.G2, KillingId.V1,
        "g2, V1, lambda c - 1 != 0: x, y harmonic with frequency lambda c - 1",
        1.0, 0.0, (0.5, 0.3, 0.2, -0.1, 0.0), 1.0,
    ),
    FamilyId.G2_V4_CIRCULAR: FamilyInfo(
        Metric.G2, KillingId.V4,
        "g2, V4, lambda = 1, c = 2: x = 2 cos 2t, y = -2 sin 2t, z = 4t + sin 4t + c1",
        1.0, 2.0, (0.0, 0.0, 0.0, 0.0, 0.0), 2.0 * math.pi,
    ),
    FamilyId.G2_V4_ROTATING: FamilyInfo(
        Metric.G2, KillingId.V4,
        "g2, V4, k1 = R, k2 = w != 1: x = lambda R cos wt, y = -R sin wt",
        1.0, None, (2.0, 2.0, 0.0, 0.0, 0.0), 2.0 * math.pi,
    ),
}


def rotating_c(lam, radius, omega):
    """First-integral constant carried by the rotating V4 curve on g2."""
    return (omega**2 - lam**2 * radius**2 * omega + lam**2 * radius**2 / 2.0) / (
        lam * (1.0 - omega)
    )


def _forced_c(family, lam, k):
    if family is FamilyId.G1_V1_LINEAR:
        return -1.0 / lam
    if family is FamilyId.G2_V1_LINEAR:
        return 1.0 / lam
    if family is FamilyId.G2_V4_ROTATING:
        if k[1] == 1.0:
            raise DomainError("rotating family needs angular frequency k2 != 1")
        return rotating_c(lam, k[0], k[1])
    if family is FamilyId.G1_V4_SPECIAL:
        return 0.0
    if family is FamilyId.G2_V4_CIRCULAR:
        return 2.0
    return None


@dataclass(frozen=True)
class FamilySpec:
    """
    A member of a closed-form family.

    Attributes:
        family: FamilyId (or its CLI name)
        variant: Variant
        lam: lambda > 0
        c: First-integral constant; None selects the value the family forces
        k: Integration constants k1..k5 (shorter tuples are zero-padded)
        c1: Additive z constant for the V4 families
    """

    family: FamilyId
    variant: Variant = Variant.DERIVATION
    lam: float = 1.0
    c: Optional[float] = None
    k: Tuple[float, ...] = (0.0, 0.0, 0.0, 0.0, 0.0)
    c1: float = 0.0

    def __post_init__(self):
        family = FamilyId.parse(self.family)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        object.__setattr__(self, "lam", float(self.lam))
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be a positive real, got {self.lam}")

        k = tuple(float(v) for v in self.k)
        if len(k) > 5:
            raise DomainError(f"at most five constants k1..k5, got {len(k)}")
        k = k + (0.0,) * (5 - len(k))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "c1", float(self.c1))

        forced = _forced_c(family, self.lam, k)
        if self.c is None:
            c = 0.0 if forced is None else forced
            logger.debug("%s: c resolved to %g", family.value, c)
        else:
            c = float(self.c)
            if forced is not None and not math.isclose(c, forced, rel_tol=1e-12, abs_tol=1e-12):
                raise DomainError(f"{family.value} requires c = {forced:g}, got {c:g}")
        object.__setattr__(self, "c", c)

        if family is FamilyId.G2_V4_CIRCULAR and self.lam != 1.0:
            raise DomainError(f"{family.value} requires lambda = 1, got {self.lam:g}")
        if family is FamilyId.G1_V1_EXP:
            if self.lam * c + 1.0 == 0.0:
                raise DomainError("g1-v1-exp requires lambda c + 1 != 0 (use g1-v1-linear)")
            if self.variant is Variant.AS_PRINTED and self.lam + c == 0.0:
                raise DomainError("printed g1-v1-exp formulas are singular at lambda + c = 0")
        if family is FamilyId.G2_V1_TRIG:
            if self.lam * c - 1.0 == 0.0:
                raise DomainError("g2-v1-trig requires lambda c - 1 != 0 (use g2-v1-linear)")
            if self.variant is Variant.AS_PRINTED and self.lam * c + 1.0 == 0.0:
                raise DomainError("printed g2-v1-trig formulas are singular at lambda c + 1 = 0")

    @property
    def info(self):
        return FAMILIES[self.family]

    @property
    def params(self):
        return ModelParams(self.info.metric, self.lam)

    @property
    def killing(self):
        return self.info.killing


class Jet(NamedTuple):
    """Position, velocity and acceleration arrays, each shaped (3,) + t.shape."""

    pos: np.ndarray
    vel: np.ndarray
    acc: np.ndarray


def _jet(x, y, z):
    return Jet(
        np.array([x[0], y[0], z[0]]),
        np.array([x[1], y[1], z[1]]),
        np.array([x[2], y[2], z[2]]),
    )


def _g1_v1_linear(spec, t):
    k1, k2, k3, k4, k5 = spec.k
    lam = spec.lam
    one = np.ones_like(t)
    x = (k1 * t + k2, k1 * one, 0.0 * t)
    y = (k3 * t + k4, k3 * one, 0.0 * t)
    if spec.variant is Variant.AS_PRINTED:
        z = (
            -(t / lam + k1 * k3 * t + k2 * k3),
            -(1.0 / lam + k1 * k3) * one,
            0.0 * t,
        )
    else:
        z = (
            k5 - t / lam - k2 * k3 * t - k1 * k3 * t**2 / 2.0,
            -1.0 / lam - k2 * k3 - k1 * k3 * t,
            -k1 * k3 * one,
        )
    return _jet(x, y, z)


def _g2_v1_linear(spec, t):
    k1, k2, k3, k4, k5 = spec.k
    lam = spec.lam
    one = np.ones_like(t)
    x = (k1 * t + k2, k1 * one, 0.0 * t)
    y = (k3 * t + k4, k3 * one, 0.0 * t)
    if spec.variant is Variant.AS_PRINTED:
        z = ((1.0 / lam - k1 * k3) * t - k1 * k3, (1.0 / lam - k1 * k3) * one, 0.0 * t)
    else:
        z = (
            k5 + t / lam - k2 * k3 * t - k1 * k3 * t**2 / 2.0,
            1.0 / lam - k2 * k3 - k1 * k3 * t,
            -k1 * k3 * one,
        )
    return _jet(x, y, z)


def _g1_v1_exp(spec, t):
    k1, k2, k3, k4, k5 = spec.k
    lam, c = spec.lam, spec.c
    w = lam * c + 1.0
    E, F = np.exp(w * t), np.exp(-w * t)
    plus, minus = k1 * E + k2 * F, k1 * E - k2 * F

    # the printed x, y divide by lambda + c where the system gives lambda c + 1
    d = lam + c if spec.variant is Variant.AS_PRINTED else w
    scale = w / d
    x = (-(lam / d) * plus + k3, -lam * scale * minus, -lam * w * scale * plus)
    y = (minus / d + k4, scale * plus, w * scale * minus)

    sq_plus = k1**2 * E**2 + k2**2 * F**2
    sq_minus = k1**2 * E**2 - k2**2 * F**2
    drift = c + 2.0 * lam * k1 * k2 / w
    z = (
        drift * t + lam / (2.0 * w**2) * sq_minus - (k3 / w) * minus + k5,
        drift + (lam / w) * sq_plus - k3 * plus,
        2.0 * lam * sq_minus - k3 * w * minus,
    )
    return _jet(x, y, z)


def _g2_v1_trig(spec, t):
    k1, k2, k3, k4, k5 = spec.k
    lam, c = spec.lam, spec.c
    mu = lam * c - 1.0
    C, S = np.cos(mu * t), np.sin(mu * t)
    C2, S2 = np.cos(2 * mu * t), np.sin(2 * mu * t)
    x = (
        (lam / mu) * (k1 * C + k2 * S) + k3,
        lam * (-k1 * S + k2 * C),
        -lam * mu * (k1 * C + k2 * S),
    )
    y = (
        (k1 * S - k2 * C) / mu + k4,
        k1 * C + k2 * S,
        mu * (-k1 * S + k2 * C),
    )
    sum_sq, diff_sq = k1**2 + k2**2, k1**2 - k2**2
    if spec.variant is Variant.AS_PRINTED:
        p = lam * c + 1.0
        B = (
            lam * diff_sq / (4 * mu**2) * S2
            + 4 * lam * sum_sq * t / p
            - lam * k1 * k2 / (2 * p**2) * C2
            + (k3 / mu) * (k1 * S - k2 * C)
        )
        Bp = (
            lam * diff_sq / (2 * mu) * C2
            + 4 * lam * sum_sq / p
            + lam * k1 * k2 * mu / p**2 * S2
            + k3 * (k1 * C + k2 * S)
        )
        Bpp = (
            -lam * diff_sq * S2
            + 2 * lam * k1 * k2 * mu**2 / p**2 * C2
            + k3 * mu * (-k1 * S + k2 * C)
        )
        z = (c * t - B + k5, c - Bp, -Bpp)
    else:
        z = (
            c * t
            - (lam / mu) * (sum_sq * t / 2 + diff_sq * S2 / (4 * mu) - k1 * k2 * C2 / (2 * mu))
            - (k3 / mu) * (k1 * S - k2 * C)
            + k5,
            c
            - (lam / mu) * (sum_sq / 2 + diff_sq * C2 / 2 + k1 * k2 * S2)
            - k3 * (k1 * C + k2 * S),
            lam * (diff_sq * S2 - 2 * k1 * k2 * C2) + k3 * mu * (k1 * S - k2 * C),
        )
    return _jet(x, y, z)


def _g1_v4_special(spec, t):
    k1, k2, k3 = spec.k[:3]
    lam, c = spec.lam, spec.c
    one = np.ones_like(t)
    line = k1 * t + k2
    x = (lam * line, lam * k1 * one, 0.0 * t)
    y = (line, k1 * one, 0.0 * t)
    if spec.variant is Variant.AS_PRINTED:
        z = (
            (c - lam * k1 * k2) * t - (lam * k1 / 2.0) * t**2 + k3,
            c - lam * k1 * k2 - lam * k1 * t,
            -lam * k1 * one,
        )
    else:
        z = (
            k3 - lam * k1 * k2 * t - (lam * k1**2 / 2.0) * t**2,
            -lam * k1 * k2 - lam * k1**2 * t,
            -lam * k1**2 * one,
        )
    return _jet(x, y, z)


def _g2_v4_rotating(spec, t, radius, omega):
    lam, c = spec.lam, spec.c
    C, S = np.cos(omega * t), np.sin(omega * t)
    drift = c - lam * radius**2 / 2.0 + lam * radius**2 * omega / 2.0
    x = (lam * radius * C, -lam * radius * omega * S, -lam * radius * omega**2 * C)
    y = (-radius * S, -radius * omega * C, radius * omega**2 * S)
    z = (
        drift * t + (lam * radius**2 / 4.0) * np.sin(2 * omega * t) + spec.c1,
        drift + (lam * radius**2 * omega / 2.0) * np.cos(2 * omega * t),
        -lam * radius**2 * omega**2 * np.sin(2 * omega * t),
    )
    return _jet(x, y, z)


def _g2_v4_circular(spec, t):
    return _g2_v4_rotating(spec, t, 2.0, 2.0)


def _g2_v4_rotating_spec(spec, t):
    return _g2_v4_rotating(spec, t, spec.k[0], spec.k[1])


_EVALUATORS = {
    FamilyId.G1_V1_LINEAR: _g1_v1_linear,
    FamilyId.G1_V1_EXP: _g1_v1_exp,
    FamilyId.G1_V4_SPECIAL: _g1_v4_special,
    FamilyId.G2_V1_LINEAR: _g2_v1_linear,
    FamilyId.G2_V1_TRIG: _g2_v1_trig,
    FamilyId.G2_V4_CIRCULAR: _g2_v4_circular,
    FamilyId.G2_V4_ROTATING: _g2_v4_rotating_spec,
}


class ClosedFormCurve:
    """
    Analytic curve of a FamilySpec.

    Usage:
        curve = ClosedFormCurve(FamilySpec("g2-v4-circular"))
        state = curve.evaluate(0.5)
        jet = curve.jet(np.linspace(0, 1, 11))
    """

    def __init__(self, spec):
        if not isinstance(spec, FamilySpec):
            raise TypeError("ClosedFormCurve expects a FamilySpec")
        self.spec = spec
        self.params = spec.params
        self.killing = spec.killing
        self._evaluate = _EVALUATORS[spec.family]

    def __repr__(self):
        return f"ClosedFormCurve({self.spec.family.value}, {self.spec.variant.value})"

    def jet(self, t):
        """Position, velocity and acceleration at t (scalar or array)."""
        t = np.asarray(t, dtype=float)
        return self._evaluate(self.spec, t)

    def evaluate(self, t):
        """CurveState at a scalar t."""
        jet = self.jet(float(t))
        return CurveState(
            float(t),
            CoordPoint(*(float(v) for v in jet.pos)),
            CoordVelocity(*(float(v) for v in jet.vel)),
        )

    def initial_state(self, t0=0.0):
        return self.evaluate(t0)

    def positions(self, t):
        """Positions at the times t as an array of shape (len(t), 3)."""
        return np.asarray(self.jet(np.asarray(t, dtype=float)).pos).T


def eval_family(spec, t):
    """
    Evaluate a closed-form family at t.

    Args:
        spec: FamilySpec
        t: Curve parameter

    Returns:
        CurveState with analytic position and velocity
    """
    return ClosedFormCurve(spec).evaluate(t)
