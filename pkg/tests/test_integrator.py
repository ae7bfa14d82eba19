import math

import numpy as np
import pytest

from magnetic_curves.dynamics.integrator import IntegratorConfig, Method, Trajectory, integrate, retrace
from magnetic_curves.dynamics.lorentz import CurveState
from magnetic_curves.dynamics import integrator
from magnetic_curves.exceptions import DomainError, IntegratorOverflow, StepLimitExceeded, StepUnderflow
from magnetic_curves.geometry.frames import CoordPoint, CoordVelocity, ModelParams
from magnetic_curves.verification.residual import compare, conservation_report


def _state(*values):
    return CurveState(0.0, CoordPoint(*values[:3]), CoordVelocity(*values[3:]))


def test_adaptive_matches_circular_curve(circular):
    cfg = IntegratorConfig(t_end=math.pi / 2)
    traj = integrate(circular.params, circular.killing, circular.initial_state(), cfg)
    assert compare(traj, circular) < 1e-7
    assert traj.t[-1] == cfg.t_end
    assert traj.meta["accepted_steps"] == len(traj) - 1


def test_fixed_step_grid_is_uniform(circular):
    cfg = IntegratorConfig(t_end=1.0, method="rk4", dt=0.03)
    traj = integrate(circular.params, circular.killing, circular.initial_state(), cfg)
    assert len(traj) == 35
    assert traj.is_uniform()
    assert traj.t[-1] == 1.0
    assert traj.meta["rhs_evaluations"] == 4 * 34


def test_fixed_step_fourth_order(circular):
    errors = []
    for n in (200, 400):
        cfg = IntegratorConfig(t_end=1.0, method=Method.FIXED_RK4, dt=1.0 / n)
        errors.append(compare(integrate(circular.params, circular.killing, circular.initial_state(), cfg), circular))
    assert 14.4 <= errors[0] / errors[1] <= 17.6


@pytest.mark.parametrize("metric", ["g1", "g2"])
@pytest.mark.parametrize("k", ["V1", "V2", "V3", "V4"])
def test_conservation_on_short_runs(metric, k):
    p = ModelParams(metric, 1.0)
    traj = integrate(p, k, _state(0.2, -0.3, 0.1, 0.5, 0.4, -0.6), IntegratorConfig(t_end=2.0))
    drift = conservation_report(traj, relative=True)
    assert drift.speed < 1e-8
    assert drift.first_integral < 1e-8


def test_retrace_returns_to_start():
    p = ModelParams("g1", 1.3)
    cfg = IntegratorConfig(t_end=2.0)
    traj = integrate(p, "V3", _state(0.1, 0.2, 0.3, 0.5, -0.2, 0.4), cfg, charge=0.8)
    back = retrace(traj, cfg)
    assert back.charge == -0.8
    np.testing.assert_allclose(back.positions[-1], traj.positions[0], atol=1e-7)
    np.testing.assert_allclose(back.velocities[-1], -traj.velocities[0], atol=1e-7)


def test_unit_speed_option(g1):
    cfg = IntegratorConfig(t_end=0.5, unit_speed=True)
    traj = integrate(g1, "V2", _state(0.0, 0.0, 0.0, 0.0, 2.0, 0.0), cfg)
    assert conservation_report(traj).speed < 1e-9
    assert traj.velocities[0, 1] == pytest.approx(1.0)


def test_end_before_start_raises(g1):
    with pytest.raises(DomainError):
        integrate(g1, "V1", _state(0, 0, 0, 0, 0, 1), IntegratorConfig(t_end=0.0))


def test_step_underflow(circular):
    cfg = IntegratorConfig(t_end=2.0, dt=1.0, dt_min=1.0, dt_max=1.0)
    with pytest.raises(StepUnderflow):
        integrate(circular.params, circular.killing, circular.initial_state(), cfg)


def test_step_limit(circular):
    cfg = IntegratorConfig(t_end=2.0, max_steps=5)
    with pytest.raises(StepLimitExceeded):
        integrate(circular.params, circular.killing, circular.initial_state(), cfg)


def test_step_that_cannot_advance_time_raises(g1):
    init = CurveState(1e17, CoordPoint(0.0, 0.0, 0.0), CoordVelocity(0.0, 1.0, 0.0))
    with pytest.raises(StepUnderflow, match="advances"):
        integrate(g1, "V1", init, IntegratorConfig(t_end=1e17 + 100.0))


def test_consecutive_rejections_raise(g1, monkeypatch):
    def always_slightly_too_large(f, t, y, h, k_first):
        return y.copy(), np.full_like(y, 1.05e-10), k_first

    monkeypatch.setattr(integrator, "_dp_step", always_slightly_too_large)
    with pytest.raises(StepUnderflow, match="consecutive"):
        integrate(g1, "V1", _state(0, 0, 0, 0, 0, 0), IntegratorConfig(t_end=1.0))


@pytest.mark.parametrize("method", ["rk4", "rk45"])
def test_state_leaving_max_norm_escapes(circular, method):
    # z grows like 4t while the velocity stays within 8
    init = circular.initial_state()
    bounded = integrate(circular.params, circular.killing, init, IntegratorConfig(t_end=1.0, method=method, max_norm=9.0))
    assert np.max(np.abs(bounded.states)) <= 9.0
    with pytest.raises(IntegratorOverflow, match="max_norm"):
        integrate(circular.params, circular.killing, init, IntegratorConfig(t_end=5.0, method=method, max_norm=9.0))
        integrate(circular.params, circular.killing, circular.initial_state(), cfg)


@pytest.mark.parametrize(
    "kwargs",
    [dict(dt=0.0), dict(abs_tol=-1.0), dict(dt_min=1.0, dt_max=0.1), dict(t_end=math.inf), dict(max_norm=0.0), dict(max_steps=0)],
)
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        IntegratorConfig(**{"t_end": 1.0, **kwargs})


@pytest.mark.parametrize("name,method", [("rk4", Method.FIXED_RK4), ("dopri5", Method.EMBEDDED_RK45), ("RK45", Method.EMBEDDED_RK45)])
def test_method_parse(name, method):
    assert Method.parse(name) is method


def test_trajectory_is_read_only(g1):
    traj = Trajectory(g1, "V1", [0.0, 1.0], np.zeros((2, 6)), {"charge": 2.0})
    assert traj.charge == 2.0
    with pytest.raises(ValueError):
        traj.t[0] = 5.0
    with pytest.raises(TypeError):
        traj.meta["charge"] = 1.0


def test_trajectory_requires_increasing_times(g1):
    with pytest.raises(DomainError):
        Trajectory(g1, "V1", [0.0, 0.0], np.zeros((2, 6)))
