"""
RK4 Convergence Check
=====================

Integrates the circular V4 curve on (H3, g2) with fixed-step RK4 at dt and
dt/2 and checks the global error ratio against 2^4.
"""

import math
import sys
import time

from magnetic_curves.dynamics.integrator import IntegratorConfig, Method, integrate
from magnetic_curves.solutions.closedform import ClosedFormCurve, FamilySpec
from magnetic_curves.verification.residual import compare

EXPECTED_RATIO = 16.0


def global_error(curve, t_end, dt):
    cfg = IntegratorConfig(t_end=t_end, method=Method.FIXED_RK4, dt=dt)
    traj = integrate(curve.params, curve.killing, curve.initial_state(), cfg)
    return compare(traj, curve)


def check_convergence(steps=400, spread=0.1):
    """
    Args:
        steps (int): Steps per period at the coarse resolution
        spread (float): Accepted relative deviation of the ratio from 16

    Returns:
        bool: True if the ratio is within spread of 16
    """
    start_time = time.time()
    curve = ClosedFormCurve(FamilySpec("g2-v4-circular"))
    t_end = 2.0 * math.pi
    coarse = global_error(curve, t_end, t_end / steps)
    fine = global_error(curve, t_end, t_end / (2 * steps))
    ratio = coarse / fine
    print(f"  error(dt)={coarse:.3e}, error(dt/2)={fine:.3e}, ratio {ratio:.3f}")

    passed = abs(ratio - EXPECTED_RATIO) <= spread * EXPECTED_RATIO
    if not passed:
        print(f"ERROR: RK4 error ratio {ratio:.3f} is not within {spread:.0%} of 16")
    print(f"Convergence check completed in {time.time() - start_time:.2f} seconds")
    return passed


if __name__ == "__main__":
    sys.exit(0 if check_convergence() else 1)
