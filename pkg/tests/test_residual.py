import math

import numpy as np
import pytest

from magnetic_curves.dynamics.integrator import IntegratorConfig, Trajectory, integrate
from magnetic_curves.dynamics.lorentz import CurveState
from magnetic_curves.exceptions import DomainError, GridTooCoarse, ParamMismatch
from magnetic_curves.geometry.frames import CoordPoint, CoordVelocity, ModelParams
from magnetic_curves.solutions.closedform import FamilySpec
from magnetic_curves.verification.residual import (
    ResidualReport,
    check_family,
    check_trajectory,
    compare,
    conservation_report,
    default_grid,
    finite_difference_accelerations,
    ode_residual,
)


def test_circular_family_passes_tight_tolerance():
    report = check_family(FamilySpec("g2-v4-circular"), tol=1e-10)
    assert report.passed
    assert report.n_samples == 1001
    assert report.mode == "analytic"
    assert report.to_dict()["pass"] is True
    assert "per_sample" not in report.to_dict()
    assert len(report.to_dict(include_samples=True)["per_sample"]) == 1001


def test_default_grid_spans_family_period():
    grid = default_grid(FamilySpec("g2-v4-circular"))
    assert grid[-1] == pytest.approx(2 * math.pi)


def test_printed_linear_family_fails():
    report = check_family(FamilySpec("g1-v1-linear", variant="as-printed", k=(1, 0, 1, 0, 0)), tol=1e-6)
    assert isinstance(report, ResidualReport)
    assert not report.passed
    assert report.max_ode_residual > 1e-6


def test_ode_residual_on_closed_form(circular):
    assert ode_residual(circular.params, circular.killing, circular, 0.3) < 1e-12


def test_ode_residual_on_samples(circular):
    traj = integrate(circular.params, circular.killing, circular.initial_state(), IntegratorConfig(1.0, method="rk4", dt=1e-3))
    assert ode_residual(traj.params, traj.killing, traj, traj.t[500]) < 1e-6
    with pytest.raises(DomainError):
        ode_residual(traj.params, traj.killing, traj, 0.5005)


def test_check_trajectory_on_rk4_run(circular):
    traj = integrate(circular.params, circular.killing, circular.initial_state(), IntegratorConfig(2.0, method="rk4", dt=1e-3))
    report = check_trajectory(traj)
    assert report.mode == "finite-difference"
    assert report.passed


def test_finite_differences_are_exact_for_quartics(g1):
    t = np.linspace(0.0, 1.0, 11)
    states = np.column_stack([0 * t, 0 * t, 0 * t, t**4, t**3, t])
    acc = finite_difference_accelerations(Trajectory(g1, "V1", t, states))
    np.testing.assert_allclose(acc, [4 * t**3, 3 * t**2, np.ones_like(t)], atol=1e-10)


def test_finite_differences_need_enough_uniform_samples(g1):
    with pytest.raises(GridTooCoarse):
        finite_difference_accelerations(Trajectory(g1, "V1", [0, 1, 2, 3], np.zeros((4, 6))))
    with pytest.raises(GridTooCoarse):
        finite_difference_accelerations(Trajectory(g1, "V1", [0, 1, 2, 3, 5], np.zeros((5, 6))))


def test_compare(circular):
    traj = integrate(circular.params, circular.killing, circular.initial_state(), IntegratorConfig(1.0))
    assert compare(traj, circular) < 1e-7
    assert compare(traj, traj) == 0.0

    other = Trajectory(ModelParams("g2", 2.0), "V4", traj.t, traj.states)
    with pytest.raises(ParamMismatch):
        compare(traj, other)
    with pytest.raises(ParamMismatch):
        compare(traj, Trajectory(traj.params, "V3", traj.t, traj.states))
    with pytest.raises(ParamMismatch):
        compare(traj, Trajectory(traj.params, "V4", traj.t[:-1], traj.states[:-1]))


def test_conservation_report_on_vertical_line(g1):
    t = np.linspace(0.0, 1.0, 5)
    states = np.column_stack([0 * t, 0 * t, t, 0 * t, 0 * t, 1 + 0 * t])
    drift = conservation_report(Trajectory(g1, "V1", t, states))
    assert drift == (0.0, 0.0)


def test_relative_drift_is_scaled(g1):
    t = np.linspace(0.0, 1.0, 3)
    states = np.array([[0, 0, 0, 0, 10.0, 0], [0, 0, 0, 0, 10.0, 1.0], [0, 0, 0, 0, 10.0, 0]])
    absolute = conservation_report(Trajectory(g1, "V1", t, states))
    relative = conservation_report(Trajectory(g1, "V1", t, states), relative=True)
    assert absolute.speed == 1.0
    assert relative.speed == pytest.approx(1.0 / 101.0)


@pytest.mark.parametrize("charge", [0.0, 0.5, -1.0])
@pytest.mark.parametrize("metric,killing", [("g1", "V4"), ("g2", "V2"), ("g1", "V3")])
def test_drifts_use_the_trajectory_charge(metric, killing, charge):
    p = ModelParams(metric, 1.0)
    init = CurveState(0.0, CoordPoint(0.1, 0.2, 0.0), CoordVelocity(0.3, -0.2, 0.5))
    traj = integrate(p, killing, init, IntegratorConfig(2.0, method="rk4", dt=1e-3), charge=charge)
    drift = conservation_report(traj)
    assert drift.speed < 1e-9
    assert drift.first_integral < 1e-9
    report = check_trajectory(traj)
    assert report.passed
    assert report.max_first_integral_drift < 1e-9
