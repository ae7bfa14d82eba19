"""
Conservation Check
==================

Integrates every (metric, Killing field) pair from seeded random initial
states and checks that g(t, t) and the first integral stay constant.

Drifts are measured relative to max(1, largest squared frame velocity on the
trajectory). Runs whose state leaves the max_norm ball, or that use up their
step budget, are counted as escaped. The check fails when a pair has no
completed run or when fewer than min_completed of all runs complete, so it
cannot pass on escapes alone.
"""

import sys
import time

import numpy as np

from magnetic_curves.dynamics.integrator import IntegratorConfig, integrate
from magnetic_curves.dynamics.lorentz import CurveState
from magnetic_curves.exceptions import IntegrationError
from magnetic_curves.geometry.frames import CoordPoint, CoordVelocity, Metric, ModelParams
from magnetic_curves.geometry.killing import KillingId
from magnetic_curves.utils.parallel import process_in_parallel
from magnetic_curves.verification.residual import conservation_report


def _run(job):
    metric, killing, state, t_end, tol, max_norm, max_steps = job
    p = ModelParams(metric, 1.0)
    init = CurveState(0.0, CoordPoint(*state[:3]), CoordVelocity(*state[3:]))
    cfg = IntegratorConfig(
        t_end=t_end, abs_tol=tol, rel_tol=tol, max_norm=max_norm, max_steps=max_steps
    )
    try:
        traj = integrate(p, killing, init, cfg)
    except IntegrationError as e:
        return {"escaped": str(e)}
    drift = conservation_report(traj, relative=True)
    return {"speed": drift.speed, "first_integral": drift.first_integral, "steps": len(traj)}


def check_conservation(
    runs=10,
    seed=7,
    t_end=10.0,
    tol=1e-10,
    max_drift=1e-7,
    max_norm=1e4,
    max_steps=20_000,
    min_completed=0.5,
    n_workers=None,
):
    """
    Conservation of speed and first integral along integrated trajectories.

    Args:
        runs (int): Initial states per (metric, field) pair
        seed (int): Seed of numpy.random.default_rng
        t_end (float): Integration span
        tol (float): Integrator tolerance
        max_drift (float): Largest accepted relative drift
        max_norm (float): States beyond this max-norm count as escaped
        max_steps (int): Step budget of a single run
        min_completed (float): Smallest accepted fraction of completed runs

    Returns:
        bool: True if enough runs complete and none drifts beyond max_drift
    """
    start_time = time.time()
    rng = np.random.default_rng(seed)
    jobs = []
    for metric in Metric:
        for k in KillingId:
            for state in rng.uniform(-1.0, 1.0, size=(runs, 6)):
                jobs.append((metric.value, k.value, tuple(state), t_end, tol, max_norm, max_steps))

    results = process_in_parallel(_run, jobs, n_workers=n_workers)

    all_passed = True
    escaped = 0
    for (metric, k, state, *_), result in zip(jobs, results):
        if "escaped" in result:
            escaped += 1
            print(f"WARNING: {metric} {k} from {np.round(state, 3)} escaped: {result['escaped']}")
            continue
        worst = max(result["speed"], result["first_integral"])
        if worst > max_drift:
            print(
                f"ERROR: {metric} {k} drift speed={result['speed']:.2e} "
                f"integral={result['first_integral']:.2e} exceeds {max_drift:g}"
            )
            all_passed = False

    for metric in Metric:
        for k in KillingId:
            pair = [r for (m, kk, *_), r in zip(jobs, results) if m == metric.value and kk == k.value]
            drifts = [max(r["speed"], r["first_integral"]) for r in pair if "escaped" not in r]
            if not drifts:
                print(f"ERROR: {metric.value} {k.value}: all {len(pair)} runs escaped")
                all_passed = False
                continue
            print(
                f"  {metric.value} {k.value}: {len(drifts)} completed, {len(pair) - len(drifts)} escaped, "
                f"worst relative drift {max(drifts):.2e}"
            )

    completed = len(jobs) - escaped
    print(f"{completed} of {len(jobs)} runs completed, {escaped} escaped before t={t_end:g}")
    if completed < min_completed * len(jobs):
        print(f"ERROR: fewer than {min_completed:.0%} of the runs completed")
        all_passed = False
    print(f"Conservation check completed in {time.time() - start_time:.2f} seconds")
    return all_passed


if __name__ == "__main__":
    sys.exit(0 if check_conservation() else 1)
