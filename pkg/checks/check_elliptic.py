"""
Elliptic Function Check
=======================

1. Jacobi identities sn^2 + cn^2 = 1 and dn^2 + m sn^2 = 1 on seeded (u, m)
2. Agreement with scipy.special.ellipj (reported, warned on when loose)
3. The dn-type orbit of y'' = y - 2 lambda^2 y^3 (lambda = 1, y0 = 0.5,
   y0' = 0) against fixed-step RK4 of the full system over one period
"""

import sys
import time

import numpy as np
from scipy.special import ellipj

from magnetic_curves.dynamics.integrator import IntegratorConfig, Method, integrate
from magnetic_curves.solutions.elliptic import jacobi, solve_reduced
from magnetic_curves.solutions.reduced import ReducedEquation, lift_reduced


def check_jacobi_identities(samples=1000, seed=3, tol=1e-12):
    rng = np.random.default_rng(seed)
    us = rng.uniform(-10.0, 10.0, size=samples)
    ms = rng.uniform(0.0, 1.0, size=samples)

    worst_identity = worst_reference = 0.0
    for u, m in zip(us, ms):
        sn, cn, dn = jacobi(u, m)
        worst_identity = max(worst_identity, abs(sn * sn + cn * cn - 1.0), abs(dn * dn + m * sn * sn - 1.0))
        ref = ellipj(u, m)[:3]
        worst_reference = max(worst_reference, max(abs(a - b) for a, b in zip((sn, cn, dn), ref)))

    print(f"  identities: worst {worst_identity:.2e}; scipy ellipj: worst {worst_reference:.2e}")
    if worst_reference > 1e-10:
        print("WARNING: jacobi and scipy.special.ellipj differ by more than 1e-10")
    if worst_identity > tol:
        print(f"ERROR: Jacobi identities violated beyond {tol:g}")
        return False
    return True


def check_reduced_against_rk4(dt=1e-4, tol=1e-6):
    r = ReducedEquation("g2-v3", lam=1.0)
    orbit = solve_reduced(r, (0.5, 0.0), [0.0, 1.0])
    if orbit.period is None:
        print(f"ERROR: expected a periodic orbit, got {orbit.kind}")
        return False

    lifted = lift_reduced(r, orbit.t, orbit.u, orbit.up)
    cfg = IntegratorConfig(t_end=orbit.period, method=Method.FIXED_RK4, dt=dt)
    traj = integrate(r.params, r.killing, lifted.state(0), cfg)

    solution = solve_reduced(r, (0.5, 0.0), traj.t)
    error = float(np.max(np.abs(solution.u - traj.positions[:, 1])))
    closure = abs(solution.u[-1] - 0.5)
    print(f"  {solution.kind} orbit, period {orbit.period:.12f}; max |y - y_rk4| {error:.2e}, closure {closure:.2e}")
    if error > tol:
        print(f"ERROR: elliptic solution departs from RK4 by {error:.2e}")
        return False
    if closure > tol:
        print("ERROR: orbit does not close after one period")
        return False
    return True


def check_elliptic():
    """
    Returns:
        bool: True if both stages pass
    """
    start_time = time.time()
    identities_ok = check_jacobi_identities()
    orbit_ok = check_reduced_against_rk4()
    print(f"Elliptic check completed in {time.time() - start_time:.2f} seconds")
    return identities_ok and orbit_ok


if __name__ == "__main__":
    sys.exit(0 if check_elliptic() else 1)
