"""
Circular V4 Curve Check
=======================

The circular magnetic curve of V4 on (H3, g2) with lambda = 1, c = 2:

    x = 2 cos 2t,  y = -2 sin 2t,  z = 4t + sin 4t

1. Analytic residual over one period
2. Adaptive integration from its initial state against the closed form
3. Retracing the integrated curve with reversed velocity and charge
"""

import math
import sys
import time

import numpy as np

from magnetic_curves.dynamics.integrator import IntegratorConfig, integrate, retrace
from magnetic_curves.solutions.closedform import ClosedFormCurve, FamilySpec
from magnetic_curves.verification.residual import check_family, compare


def check_circular_family(points=1001, residual_tol=1e-12, match_tol=1e-6, tol=1e-10):
    """
    Returns:
        bool: True if all three stages pass
    """
    start_time = time.time()
    spec = FamilySpec("g2-v4-circular")
    curve = ClosedFormCurve(spec)
    grid = np.linspace(0.0, 2.0 * math.pi, points)
    all_passed = True

    report = check_family(spec, grid, tol=residual_tol)
    print(f"  analytic residual {report.max_ode_residual:.3e}, "
          f"speed drift {report.max_speed_drift:.3e}, integral drift {report.max_first_integral_drift:.3e}")
    if not report.passed:
        print(f"ERROR: closed form misses the tolerance {residual_tol:g}")
        all_passed = False

    cfg = IntegratorConfig(t_end=2.0 * math.pi, abs_tol=tol, rel_tol=tol)
    traj = integrate(spec.params, spec.killing, curve.initial_state(), cfg)
    deviation = compare(traj, curve)
    print(f"  integration: {len(traj)} samples, max coordinate error {deviation:.3e}")
    if deviation > match_tol:
        print(f"ERROR: integrated curve departs from the closed form by {deviation:.3e}")
        all_passed = False

    back = retrace(traj, cfg)
    gap = float(np.max(np.abs(back.positions[-1] - traj.positions[0])))
    vel_gap = float(np.max(np.abs(back.velocities[-1] + traj.velocities[0])))
    print(f"  retrace: position gap {gap:.3e}, velocity gap {vel_gap:.3e}")
    if max(gap, vel_gap) > match_tol:
        print("ERROR: retraced trajectory does not return to the start")
        all_passed = False

    print(f"Circular family check completed in {time.time() - start_time:.2f} seconds")
    return all_passed


if __name__ == "__main__":
    sys.exit(0 if check_circular_family() else 1)
