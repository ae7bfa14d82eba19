"""
Killing Field Verification
==========================

Checks that V1..V4 satisfy the Killing equation on both metrics:

1. Draws seeded random points in [-2, 2]^3
2. Evaluates the Lie derivative of the metric along each field by central differences
3. Requires every residual to stay below the tolerance
4. Confirms that a non-Killing control field is rejected
"""

import sys
import time

import numpy as np

from magnetic_curves.geometry.frames import CoordPoint, Metric, ModelParams
from magnetic_curves.geometry.killing import KillingId, lie_derivative_residual, max_killing_residual
from magnetic_curves.utils.parallel import batch_items, process_in_parallel

LAMBDAS = (0.5, 1.0, 2.0)
CONTROL_MIN = 1e-1


def _batch_residual(job):
    metric, lam, killing, points, h = job
    return max_killing_residual(ModelParams(metric, lam), killing, points, h)


def _control_field(pt):
    return (pt.x, 0.0, 0.0)


def check_killing_fields(samples=1000, seed=42, tol=1e-7, h=1e-5, n_workers=None):
    """
    Verify the Killing equation for every field, metric and lambda.

    Args:
        samples (int): Random points per (metric, lambda)
        seed (int): Seed of numpy.random.default_rng
        tol (float): Largest accepted residual
        h (float): Finite-difference step
        n_workers (int, optional): Worker processes

    Returns:
        bool: True if every field passes and the control field fails
    """
    start_time = time.time()
    rng = np.random.default_rng(seed)
    points = [tuple(pt) for pt in rng.uniform(-2.0, 2.0, size=(samples, 3))]
    batches = batch_items(points, n_batches=4)

    jobs, labels = [], []
    for metric in Metric:
        for lam in LAMBDAS:
            for k in KillingId:
                for batch in batches:
                    jobs.append((metric.value, lam, k.value, batch, h))
                    labels.append((metric.value, lam, k.value))

    results = process_in_parallel(_batch_residual, jobs, n_workers=n_workers)
    worst = {}
    for label, value in zip(labels, results):
        worst[label] = max(worst.get(label, 0.0), value)

    all_passed = True
    for (metric, lam, k), value in worst.items():
        status = "OK" if value < tol else "FAILED"
        print(f"  {metric} lambda={lam:<4g} {k}: max residual {value:.3e} [{status}]")
        if value >= tol:
            print(f"ERROR: {k} on {metric} (lambda={lam}) violates the Killing equation")
            all_passed = False

    for metric in Metric:
        p = ModelParams(metric, 1.0)
        control = max(lie_derivative_residual(p, _control_field, CoordPoint(*pt), h) for pt in points[:50])
        print(f"  {metric.value} control field: max residual {control:.3e}")
        if control <= CONTROL_MIN:
            print(f"ERROR: control field on {metric.value} passed as Killing ({control:.3e})")
            all_passed = False

    print(f"Killing field check completed in {time.time() - start_time:.2f} seconds")
    return all_passed


if __name__ == "__main__":
    sys.exit(0 if check_killing_fields() else 1)
