"""
Trajectory Integration
======================

Fixed-step classical RK4 and an adaptive Dormand-Prince 5(4) pair for the
Lorentz system of lorentz_rhs, plus the immutable Trajectory they produce.
"""

import logging
import math
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType

import numpy as np

from magnetic_curves.exceptions import (
    DomainError,
    IntegratorOverflow,
    StepLimitExceeded,
    StepUnderflow,
)
from magnetic_curves.dynamics.lorentz import (
    CurveState,
    lorentz_rhs,
    normalize_speed,
)
from magnetic_curves.geometry.frames import ModelParams
from magnetic_curves.geometry.killing import KillingId

logger = logging.getLogger(__name__)


class Method(str, Enum):
    FIXED_RK4 = "rk4"
    EMBEDDED_RK45 = "rk45"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {
            "rk4": cls.FIXED_RK4,
            "fixedrk4": cls.FIXED_RK4,
            "fixed-rk4": cls.FIXED_RK4,
            "rk45": cls.EMBEDDED_RK45,
            "dopri5": cls.EMBEDDED_RK45,
            "embeddedrk45": cls.EMBEDDED_RK45,
            "embedded-rk45": cls.EMBEDDED_RK45,
        }
        try:
            return aliases[str(value).strip().lower()]
        except KeyError as e:
            raise DomainError(f"unknown integration method {value!r}") from e


@dataclass(frozen=True)
class IntegratorConfig:
    """
    Integration settings.

    Attributes:
        t_end: Final parameter value
        method: Method.FIXED_RK4 or Method.EMBEDDED_RK45
        dt: Step for RK4, initial step for the adaptive pair
        abs_tol, rel_tol: Local error tolerances of the adaptive pair
        dt_min, dt_max: Bounds on the adaptive step
        max_steps: Hard cap on attempted adaptive steps
        max_norm: Largest allowed max-norm of the state; larger states count as escaped
        unit_speed: Rescale the initial velocity to |g(t, t)| = 1
    """

    t_end: float
    method: Method = Method.EMBEDDED_RK45
    dt: float = 1e-3
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    dt_min: float = 1e-12
    dt_max: float = 0.1
    max_steps: int = 1_000_000
    max_norm: float = math.inf
    unit_speed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "method", Method.parse(self.method))
        if not math.isfinite(self.t_end):
            raise DomainError(f"t_end must be finite, got {self.t_end}")
        for name in ("dt", "abs_tol", "rel_tol", "dt_min", "dt_max"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive, got {value}")
        if self.dt_min > self.dt_max:
            raise DomainError(f"dt_min ({self.dt_min}) exceeds dt_max ({self.dt_max})")
        if not self.max_norm > 0:
            raise DomainError(f"max_norm must be positive, got {self.max_norm}")
        if self.max_steps < 1:
            raise DomainError("max_steps must be at least 1")


@dataclass(frozen=True)
class Trajectory:
    """
    Sampled solution of the Lorentz system.

    Attributes:
        params: ModelParams
        killing: KillingId of the magnetic field
        t: Strictly increasing sample times, shape (N,)
        states: Rows [x, y, z, x', y', z'], shape (N, 6)
        meta: Read-only mapping with the method, tolerances and step counts
    """

    params: ModelParams
    killing: KillingId
    t: np.ndarray
    states: np.ndarray
    meta: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        states = np.array(self.states, dtype=float).reshape(len(t), 6)
        if len(t) == 0:
            raise DomainError("a trajectory needs at least one sample")
        if np.any(np.diff(t) <= 0):
            raise DomainError("trajectory times must be strictly increasing")
        t.setflags(write=False)
        states.setflags(write=False)
        object.__setattr__(self, "killing", KillingId.parse(self.killing))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "meta", MappingProxyType(dict(self.meta)))

    def __len__(self):
        return len(self.t)

    def state(self, i):
        return CurveState.from_array(self.t[i], self.states[i])

    @property
    def samples(self):
        return [self.state(i) for i in range(len(self))]

    @property
    def positions(self):
        return self.states[:, :3]

    @property
    def velocities(self):
        return self.states[:, 3:]

    @property
    def charge(self):
        return float(self.meta.get("charge", 1.0))

    def is_uniform(self, rtol=1e-9):
        if len(self.t) < 2:
            return False
        steps = np.diff(self.t)
        return bool(np.allclose(steps, steps[0], rtol=rtol, atol=0.0))


# Dormand-Prince 5(4), FSAL
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = {
    1: [1 / 5],
    2: [3 / 40, 9 / 40],
    3: [44 / 45, -56 / 15, 32 / 9],
    4: [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    5: [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    6: [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
}
# fifth minus fourth order weights
_DP_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)


def _system(p, k, charge):
    def f(t, y):
        return lorentz_rhs(p, k, CurveState.from_array(t, y), charge)

    return f


def _rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _dp_step(f, t, y, h, k_first):
    ks = np.empty((7, len(y)))
    ks[0] = k_first
    for stage in range(1, 7):
        incr = np.dot(_DP_A[stage], ks[:stage])
        ks[stage] = f(t + _DP_C[stage] * h, y + h * incr)
    # stage 6 is evaluated at the fifth order solution
    y_new = y + h * np.dot(_DP_A[6], ks[:6])
    err = h * np.dot(_DP_E, ks)
    return y_new, err, ks[6]


_MAX_CONSECUTIVE_REJECTIONS = 50


def _check_escape(y, t, cfg):
    if not np.all(np.isfinite(y)):
        raise IntegratorOverflow(f"state became non-finite at t={t:.6g}")
    norm = float(np.max(np.abs(y)))
    if norm > cfg.max_norm:
        raise IntegratorOverflow(
            f"state escaped |y|={norm:.3e} > max_norm={cfg.max_norm:.1e} at t={t:.6g}"
        )


def _integrate_fixed(f, t0, y0, cfg):
    span = cfg.t_end - t0
    n = max(1, int(math.ceil(span / cfg.dt - 1e-9)))
    h = span / n
    ts = t0 + h * np.arange(n + 1)
    ts[-1] = cfg.t_end
    ys = np.empty((n + 1, len(y0)))
    ys[0] = y0
    for i in range(n):
        ys[i + 1] = _rk4_step(f, ts[i], ys[i], h)
        _check_escape(ys[i + 1], ts[i + 1], cfg)
    stats = {"accepted_steps": n, "rejected_steps": 0, "rhs_evaluations": 4 * n, "dt": h}
    return ts, ys, stats


def _integrate_adaptive(f, t0, y0, cfg):
    ts, ys = [t0], [y0]
    t, y = t0, y0
    k_first = f(t, y)
    dt = min(max(cfg.dt, cfg.dt_min), cfg.dt_max)
    accepted = rejected = streak = 0
    evaluations = 1
    eps = np.finfo(float).eps

    while t < cfg.t_end:
        if accepted + rejected >= cfg.max_steps:
            raise StepLimitExceeded(
                f"used {cfg.max_steps} steps before t_end={cfg.t_end:g}, stopped at t={t:.6g}"
            )
        remaining = cfg.t_end - t
        last = dt >= remaining * (1.0 - 1e-12)
        h = remaining if last else dt
        # t + h must still move t
        if not last and h <= 64 * eps * max(1.0, abs(t)):
            raise StepUnderflow(f"step {h:.3e} no longer advances t={t:.6g}")

        y_new, err_vec, k_last = _dp_step(f, t, y, h, k_first)
        evaluations += 6
        if np.all(np.isfinite(y_new)) and np.all(np.isfinite(err_vec)):
            scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
            err = float(np.max(np.abs(err_vec) / scale))
        else:
            err = math.inf

        if err <= 1.0:
            t = cfg.t_end if last else t + h
            y, k_first = y_new, k_last
            ts.append(t)
            ys.append(y)
            accepted += 1
            streak = 0
            _check_escape(y, t, cfg)
        else:
            rejected += 1
            streak += 1
            if streak >= _MAX_CONSECUTIVE_REJECTIONS:
                raise StepUnderflow(f"{streak} consecutive steps rejected at t={t:.6g}")

        factor = 5.0 if err == 0.0 else 0.9 * err ** -0.2
        dt = min(cfg.dt_max, h * min(5.0, max(0.2, factor)))
        if err > 1.0 and dt < cfg.dt_min:
            if math.isinf(err):
                raise IntegratorOverflow(f"state became non-finite near t={t:.6g}")
            raise StepUnderflow(
                f"step {dt:.3e} fell below dt_min={cfg.dt_min:.1e} at t={t:.6g}"
            )

    if rejected > accepted:
        logger.warning("%d of %d adaptive steps rejected", rejected, accepted + rejected)
    stats = {
        "accepted_steps": accepted,
        "rejected_steps": rejected,
        "rhs_evaluations": evaluations,
        "dt": cfg.dt,
    }
    return np.array(ts), np.array(ys), stats


def integrate(p, k, init, cfg, charge=1.0):
    """
    Integrate D_t t = q V_k x t from init up to cfg.t_end.

    Args:
        p: ModelParams
        k: KillingId
        init: CurveState at the start time
        cfg: IntegratorConfig
        charge: Field multiplier q

    Returns:
        Trajectory

    Raises:
        DomainError: If cfg.t_end does not exceed init.t
        StepUnderflow: If the adaptive step collapses below dt_min, stops
            advancing t, or is rejected too many times in a row
        StepLimitExceeded: If cfg.max_steps attempts do not reach t_end
        IntegratorOverflow: If the state becomes non-finite or exceeds cfg.max_norm
    """
    k = KillingId.parse(k)
    if not cfg.t_end > init.t:
        raise DomainError(f"t_end={cfg.t_end} must exceed the initial time {init.t}")
    if cfg.unit_speed:
        init = normalize_speed(p, init)

    start_time = time.time()
    f = _system(p, k, charge)
    y0 = init.to_array()
    if cfg.method is Method.FIXED_RK4:
        ts, ys, stats = _integrate_fixed(f, float(init.t), y0, cfg)
    else:
        ts, ys, stats = _integrate_adaptive(f, float(init.t), y0, cfg)
    elapsed = time.time() - start_time

    meta = {
        "method": cfg.method.value,
        "abs_tol": cfg.abs_tol,
        "rel_tol": cfg.rel_tol,
        "dt_min": cfg.dt_min,
        "dt_max": cfg.dt_max,
        "charge": float(charge),
        "elapsed_seconds": elapsed,
        **stats,
    }
    logger.info(
        "%s %s integration to t=%g completed in %.2f seconds (%d steps)",
        p.metric.value,
        k.value,
        cfg.t_end,
        elapsed,
        stats["accepted_steps"],
    )
    return Trajectory(params=p, killing=k, t=ts, states=ys, meta=meta)


def retrace(traj, cfg):
    """
    Integrate back from the end of traj with reversed velocity and reversed
    charge over the same span. The end of the result should reproduce the
    start of traj with its velocity negated.
    """
    end = traj.state(-1)
    span = float(traj.t[-1] - traj.t[0])
    init = CurveState(0.0, end.pos, type(end.vel)(*(-c for c in end.vel)))
    back_cfg = replace(cfg, t_end=span, unit_speed=False)
    return integrate(traj.params, traj.killing, init, back_cfg, charge=-traj.charge)
