"""
Closed-Form Family Check
========================

Verifies the re-derived closed forms of every family on seeded random
parameter draws (|k_i| <= 1, |c| <= 1, lambda in [0.5, 2], t in [0, 1]).
"""

import sys
import time

import numpy as np

from magnetic_curves.solutions.closedform import FAMILIES, FamilyId, FamilySpec
from magnetic_curves.utils.parallel import process_in_parallel
from magnetic_curves.verification.residual import check_family

# draws closer than this to a degenerate frequency are redrawn
MIN_FREQUENCY = 0.05


def _draw(family, rng):
    while True:
        lam = rng.uniform(0.5, 2.0)
        k = tuple(rng.uniform(-1.0, 1.0, size=5))
        c = rng.uniform(-1.0, 1.0)
        if family is FamilyId.G1_V1_EXP and abs(lam * c + 1.0) < MIN_FREQUENCY:
            continue
        if family is FamilyId.G2_V1_TRIG and abs(lam * c - 1.0) < MIN_FREQUENCY:
            continue
        if family is FamilyId.G2_V4_CIRCULAR:
            return FamilySpec(family, lam=1.0, c1=k[4])
        if family is FamilyId.G2_V4_ROTATING:
            omega = k[1] if abs(k[1] - 1.0) >= MIN_FREQUENCY else 0.5
            return FamilySpec(family, lam=lam, k=(k[0], omega), c1=k[4])
        if FAMILIES[family].default_c is None or family is FamilyId.G1_V4_SPECIAL:
            return FamilySpec(family, lam=lam, k=k)
        return FamilySpec(family, lam=lam, c=c, k=k)


def _verify(spec):
    report = check_family(spec, np.linspace(0.0, 1.0, 201), tol=1e-8)
    return report.max_ode_residual, max(report.max_speed_drift, report.max_first_integral_drift), report.passed


def check_closed_families(draws=20, seed=11, n_workers=None):
    """
    Returns:
        bool: True if every draw of every family passes at 1e-8
    """
    start_time = time.time()
    rng = np.random.default_rng(seed)
    specs = [_draw(family, rng) for family in FamilyId for _ in range(draws)]
    results = process_in_parallel(_verify, specs, n_workers=n_workers)

    all_passed = True
    for family in FamilyId:
        rows = [(s, r) for s, r in zip(specs, results) if s.family is family]
        worst_residual = max(r[0] for _, r in rows)
        worst_drift = max(r[1] for _, r in rows)
        failures = [s for s, r in rows if not r[2]]
        print(f"  {family.value:<16} residual {worst_residual:.2e}, drift {worst_drift:.2e}, "
              f"{len(rows) - len(failures)}/{len(rows)} passed")
        for spec in failures:
            print(f"ERROR: {family.value} fails for lambda={spec.lam:.4g}, c={spec.c:.4g}, k={np.round(spec.k, 4)}")
            all_passed = False

    print(f"Closed-form family check completed in {time.time() - start_time:.2f} seconds")
    return all_passed


if __name__ == "__main__":
    sys.exit(0 if check_closed_families() else 1)
