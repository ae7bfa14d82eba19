"""
Residual Verification
=====================

Decides whether a curve solves D_t t = q V x t. Analytic curves are checked
with their exact derivatives; sampled trajectories with fourth-order finite
differences of the velocity on a uniform grid.

The residual at a sample is the Euclidean norm of the frame components of
D_t t - q V x t, so a lightlike discrepancy still counts.
"""

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Tuple

import numpy as np

from magnetic_curves.dynamics.integrator import Trajectory
from magnetic_curves.dynamics.lorentz import (
    CurveState,
    covariant_acceleration,
    first_integral,
    lorentz_force,
)
from magnetic_curves.exceptions import DomainError, GridTooCoarse, ParamMismatch
from magnetic_curves.geometry.frames import CoordPoint, CoordVelocity, frame_components
from magnetic_curves.geometry.killing import KillingId
from magnetic_curves.solutions.closedform import ClosedFormCurve, FamilySpec

logger = logging.getLogger(__name__)

DEFAULT_ANALYTIC_TOL = 1e-8
DEFAULT_FD_TOL = 1e-6
DEFAULT_GRID_POINTS = 1001


@dataclass(frozen=True)
class ResidualReport:
    """
    Outcome of a residual check.

    passed holds exactly when the residual and both drifts are <= tol.
    """

    label: str
    mode: str
    n_samples: int
    max_ode_residual: float
    max_speed_drift: float
    max_first_integral_drift: float
    tol: float
    passed: bool
    per_sample: Tuple[Tuple[float, float], ...] = field(default=(), repr=False)

    def to_dict(self, include_samples=False):
        out = {
            "label": self.label,
            "mode": self.mode,
            "n_samples": self.n_samples,
            "max_ode_residual": self.max_ode_residual,
            "max_speed_drift": self.max_speed_drift,
            "max_first_integral_drift": self.max_first_integral_drift,
            "tol": self.tol,
            "pass": self.passed,
        }
        if include_samples:
            out["per_sample"] = [list(pair) for pair in self.per_sample]
        return out


class Drift(NamedTuple):
    speed: float
    first_integral: float


def _state(t, pos, vel):
    return CurveState(t, CoordPoint(*pos), CoordVelocity(*vel))


def residual_profile(p, k, t, pos, vel, acc, charge=1.0):
    """
    Residual norms along a curve.

    Args:
        p: ModelParams
        k: KillingId
        t: Sample times, shape (N,)
        pos, vel, acc: Arrays of shape (3, N)
        charge: Field multiplier q

    Returns:
        numpy array of shape (N,)
    """
    s = _state(t, pos, vel)
    lhs = covariant_acceleration(p, s, acc)
    rhs = lorentz_force(p, k, s, charge)
    diff = np.array(np.broadcast_arrays(*(a - b for a, b in zip(lhs, rhs))), dtype=float)
    return np.sqrt(np.sum(diff * diff, axis=0))


def _speed_and_integral(p, k, pos, vel, charge=1.0):
    a = frame_components(p, CoordPoint(*pos), CoordVelocity(*vel))
    speed_sq = a[0] * a[0] + a[1] * a[1] - a[2] * a[2]
    integral = first_integral(p, k, _state(0.0, pos, vel), charge)
    scale = np.max(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])
    return np.atleast_1d(speed_sq), np.atleast_1d(integral), float(scale)


def _fd_weights(h):
    central = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    forward = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    return central, forward


def finite_difference_accelerations(traj):
    """
    Second derivatives (x'', y'', z'') at every sample from fourth-order
    differences of the velocity columns, shape (3, N).

    Raises:
        GridTooCoarse: With fewer than five samples or a non-uniform grid
    """
    n = len(traj)
    if n < 5:
        raise GridTooCoarse(f"finite differences need at least 5 samples, got {n}")
    if not traj.is_uniform():
        raise GridTooCoarse("finite-difference residuals need a uniform time grid")
    h = float(traj.t[1] - traj.t[0])
    central, forward = _fd_weights(h)
    vel = traj.velocities
    acc = np.empty_like(vel)
    for i in range(2, n - 2):
        acc[i] = central @ vel[i - 2 : i + 3]
    for i in (0, 1):
        acc[i] = forward @ vel[i : i + 5]
        j = n - 1 - i
        acc[j] = -(forward @ vel[j - 4 : j + 1][::-1])
    return acc.T


def _curve_jet(curve, t):
    if isinstance(curve, Trajectory):
        i = int(np.argmin(np.abs(curve.t - t)))
        if not np.isclose(curve.t[i], t, rtol=1e-12, atol=1e-12):
            raise DomainError(f"t={t} is not a sample time of the trajectory")
        acc = finite_difference_accelerations(curve)[:, i]
        return curve.positions[i], curve.velocities[i], acc
    if hasattr(curve, "jet"):
        return curve.jet(float(t))
    raise TypeError("curve must be a Trajectory or provide jet(t)")


def ode_residual(p, k, curve, t, charge=1.0):
    """
    Residual |D_t t - q V_k x t| of a curve at t.

    Args:
        p: ModelParams
        k: KillingId
        curve: ClosedFormCurve (analytic) or Trajectory (finite differences;
            t must be one of its sample times)
        t: Curve parameter
        charge: Field multiplier q

    Returns:
        float
    """
    pos, vel, acc = _curve_jet(curve, t)
    profile = residual_profile(
        p, KillingId.parse(k), np.atleast_1d(float(t)),
        np.asarray(pos, dtype=float).reshape(3, 1),
        np.asarray(vel, dtype=float).reshape(3, 1),
        np.asarray(acc, dtype=float).reshape(3, 1),
        charge,
    )
    return float(profile[0])


def _report(label, mode, p, k, t, pos, vel, acc, tol, charge):
    residuals = residual_profile(p, k, t, pos, vel, acc, charge)
    speed_sq, integral, _ = _speed_and_integral(p, k, pos, vel, charge)
    speed_drift = float(np.max(np.abs(speed_sq - speed_sq[0])))
    integral_drift = float(np.max(np.abs(integral - integral[0])))
    max_residual = float(np.max(residuals))
    passed = bool(max_residual <= tol and speed_drift <= tol and integral_drift <= tol)
    logger.debug("%s: residual %.3e, drifts %.3e / %.3e", label, max_residual, speed_drift, integral_drift)
    return ResidualReport(
        label=label,
        mode=mode,
        n_samples=len(t),
        max_ode_residual=max_residual,
        max_speed_drift=speed_drift,
        max_first_integral_drift=integral_drift,
        tol=float(tol),
        passed=passed,
        per_sample=tuple(zip(map(float, t), map(float, residuals))),
    )


def default_grid(spec, n_points=DEFAULT_GRID_POINTS):
    return np.linspace(0.0, spec.info.default_t_end, n_points)


def check_family(spec, grid=None, tol=DEFAULT_ANALYTIC_TOL):
    """
    Verify a closed-form family member with analytic derivatives.

    Args:
        spec: FamilySpec
        grid: Sample times (default: 1001 points on the family's default span)
        tol: Pass threshold for residual and drifts

    Returns:
        ResidualReport
    """
    if not isinstance(spec, FamilySpec):
        raise TypeError("check_family expects a FamilySpec")
    t = np.asarray(default_grid(spec) if grid is None else grid, dtype=float)
    curve = ClosedFormCurve(spec)
    jet = curve.jet(t)
    pos, vel, acc = (np.broadcast_to(a, (3,) + t.shape) for a in jet)
    label = f"{spec.family.value}/{spec.variant.value}"
    return _report(label, "analytic", spec.params, spec.killing, t, pos, vel, acc, tol, 1.0)


def check_trajectory(traj, tol=DEFAULT_FD_TOL):
    """Finite-difference residual and drifts of a sampled trajectory."""
    acc = finite_difference_accelerations(traj)
    label = f"{traj.params.metric.value}/{traj.killing.value}/{traj.meta.get('method', 'samples')}"
    return _report(
        label,
        "finite-difference",
        traj.params,
        traj.killing,
        traj.t,
        traj.positions.T,
        traj.velocities.T,
        acc,
        tol,
        traj.charge,
    )


def compare(a, b):
    """
    Largest Euclidean coordinate distance between a and b at a's sample times.

    Args:
        a: Trajectory
        b: Trajectory on the same grid, or any curve with .params and
           .positions(t) (e.g. ClosedFormCurve)

    Raises:
        ParamMismatch: On different metrics, lambdas, fields or grids
    """
    if a.params != b.params:
        raise ParamMismatch(f"cannot compare {a.params} with {b.params}")
    killing_b = getattr(b, "killing", a.killing)
    if KillingId.parse(killing_b) is not a.killing:
        raise ParamMismatch(f"cannot compare field {a.killing.value} with {killing_b}")
    if isinstance(b, Trajectory):
        if len(b) != len(a) or not np.allclose(a.t, b.t, rtol=1e-12, atol=1e-12):
            raise ParamMismatch("trajectories are sampled on different grids")
        other = b.positions
    else:
        other = np.asarray(b.positions(a.t), dtype=float).reshape(len(a), 3)
    return float(np.max(np.linalg.norm(a.positions - other, axis=1)))


def conservation_report(traj, relative=False):
    """
    Largest deviation of g(t, t) and of the first integral (with the
    trajectory's charge) from their initial values.

    With relative=True both drifts are divided by max(1, largest squared
    Euclidean norm of the frame velocity on the trajectory).

    Returns:
        Drift(speed, first_integral)
    """
    speed_sq, integral, scale = _speed_and_integral(
        traj.params, traj.killing, traj.positions.T, traj.velocities.T, traj.charge
    )
    speed_drift = float(np.max(np.abs(speed_sq - speed_sq[0])))
    integral_drift = float(np.max(np.abs(integral - integral[0])))
    if relative:
        norm = max(1.0, scale)
        return Drift(speed_drift / norm, integral_drift / norm)
    return Drift(speed_drift, integral_drift)
