"""
Reduced Equation Lift Check
===========================

Solves each reduced equation at c = 0, lifts the solution to a 3-D curve
and verifies the lift against the full magnetic system with finite
differences. The printed x-equation of V2 on (H3, g2) carries a factor
1/lambda that the system does not produce; its lift at lambda = 2 is
expected to fail.
"""

import sys
import time

import numpy as np

from magnetic_curves.exceptions import MagneticCurvesError
from magnetic_curves.solutions.elliptic import solve_reduced
from magnetic_curves.solutions.reduced import ReducedEquation, lift_reduced
from magnetic_curves.verification.residual import check_trajectory

# (equation, lambda, variant, initial (u, u'), t_end, expected to pass)
CASES = (
    ("g1-v2", 1.0, "derivation", (0.2, 0.0), 1.0, True),
    ("g1-v3", 0.8, "derivation", (0.5, 0.0), 5.0, True),
    ("g2-v2", 1.0, "derivation", (0.5, 0.0), 5.0, True),
    ("g2-v3", 1.0, "derivation", (0.5, 0.0), 5.0, True),
    ("g2-v2", 2.0, "derivation", (0.3, 0.1), 5.0, True),
    ("g2-v2", 2.0, "as-printed", (0.3, 0.1), 5.0, False),
)


def check_reduced_lift(points=2001, tol=1e-6):
    """
    Returns:
        bool: True if every case ends the way CASES expects
    """
    start_time = time.time()
    all_passed = True

    for which, lam, variant, init, t_end, expected in CASES:
        r = ReducedEquation(which, lam=lam, variant=variant)
        label = f"{which} lambda={lam:g} {variant}"
        try:
            solution = solve_reduced(r, init, np.linspace(0.0, t_end, points))
            report = check_trajectory(lift_reduced(r, solution.t, solution.u, solution.up), tol=tol)
        except MagneticCurvesError as e:
            print(f"ERROR: {label}: {e}")
            all_passed = False
            continue

        outcome = "pass" if report.passed else "fail"
        print(f"  {label:<28} {solution.kind:<10} residual {report.max_ode_residual:.2e} -> {outcome}")
        if report.passed != expected:
            print(f"ERROR: {label} was expected to {'pass' if expected else 'fail'}")
            all_passed = False

    print(f"Reduced lift check completed in {time.time() - start_time:.2f} seconds")
    return all_passed


if __name__ == "__main__":
    sys.exit(0 if check_reduced_lift() else 1)
