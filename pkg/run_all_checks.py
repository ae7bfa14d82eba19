#!/usr/bin/env python3
"""
Killing Magnetic Curves Acceptance Suite - Runner
================================================

Runs all or selected acceptance checks and writes the detailed output to a
timestamped log file.

Usage:
    python run_all_checks.py [--output-dir OUTPUT_DIR] [--checks CHECK1,CHECK2,...] [--workers N]

Available checks:
    killing - Killing equation for V1..V4 on both metrics, plus a control field
    conservation - Speed and first integral along integrated trajectories
    circular - Circular V4 curve: residual, integration, retrace
    families - Re-derived closed forms on random parameter draws
    printed - Expected failures of the printed closed forms
    elliptic - Jacobi identities and the elliptic reduced solution against RK4
    lift - Reduced solutions lifted to the full system
    convergence - Fourth-order convergence of fixed-step RK4
    all - Run all checks (default)
"""

import argparse
import os
import sys
from datetime import datetime

# Ensure we can import from the checks directory
sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from checks.check_circular_family import check_circular_family
from checks.check_closed_families import check_closed_families
from checks.check_conservation import check_conservation
from checks.check_convergence import check_convergence
from checks.check_elliptic import check_elliptic
from checks.check_killing_fields import check_killing_fields
from checks.check_printed_formulas import check_printed_formulas
from checks.check_reduced_lift import check_reduced_lift
from magnetic_curves.data_processing.loader import get_output_path


def parse_arguments():
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="Run the acceptance checks for the Killing magnetic curves package."
    )
    parser.add_argument(
        "--output-dir",
        type=str,
        default=None,
        help="Directory for the validation log (default $MAGNETIC_CURVES_OUTPUT_DIR or ./output)",
    )
    parser.add_argument(
        "--checks",
        type=str,
        default="all",
        help="Comma-separated list of checks to run "
        "(killing,conservation,circular,families,printed,elliptic,lift,convergence,all)",
    )
    parser.add_argument(
        "--workers", type=int, default=None, help="Worker processes for the parallel checks"
    )
    return parser.parse_args()


def _suites(n_workers):
    return [
        ("killing", "Killing fields", lambda: check_killing_fields(n_workers=n_workers)),
        ("conservation", "Conservation", lambda: check_conservation(n_workers=n_workers)),
        ("circular", "Circular family", check_circular_family),
        ("families", "Closed families", lambda: check_closed_families(n_workers=n_workers)),
        ("printed", "Printed formulas", check_printed_formulas),
        ("elliptic", "Elliptic solutions", check_elliptic),
        ("lift", "Reduced lift", check_reduced_lift),
        ("convergence", "Convergence", check_convergence),
    ]


def run_checks(output_dir=None, checks="all", n_workers=None):
    """
    Run the specified acceptance checks.

    Args:
        output_dir (str): Directory where the log is written
        checks (str): Comma-separated list of checks to run
        n_workers (int): Worker processes for the parallel checks

    Returns:
        tuple: (results by check name, overall success, whether any check ran)
    """
    output_dir = get_output_path(output_dir)
    os.makedirs(output_dir, exist_ok=True)

    log_file = os.path.join(
        output_dir, f"validation_log_{datetime.now().strftime('%Y%m%d_%H%M%S')}.txt"
    )
    log_handle = open(log_file, "w")
    original_stdout = sys.stdout
    sys.stdout = log_handle

    print(f"Starting acceptance suite at {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print(f"Checks to run: {checks}")
    print("=" * 80)

    check_list = [c.strip() for c in checks.lower().split(",")]
    run_all = "all" in check_list

    validation_results = {}
    for key, title, suite in _suites(n_workers):
        if not (run_all or key in check_list):
            continue
        print("\n\n" + "=" * 40)
        print(f"RUNNING {title.upper()} CHECK")
        print("=" * 40)
        try:
            validation_results[key] = bool(suite())
        except Exception as e:
            print(f"ERROR: {title} check raised {type(e).__name__}: {str(e)}")
            validation_results[key] = False

    all_passed = all(validation_results.values())
    any_run = bool(validation_results)

    print("\n\n" + "=" * 40)
    print("VALIDATION SUMMARY")
    print("=" * 40)
    for check_name, result in validation_results.items():
        print(f"{check_name.title(): <30}: {'PASSED' if result else 'FAILED'}")

    validation_status = "PASSED" if all_passed and any_run else "FAILED"
    print("\nOVERALL VALIDATION:", validation_status)
    print(f"Detailed validation log saved to: {log_file}")

    sys.stdout = original_stdout
    log_handle.close()

    print(f"Validation completed. Log saved to {log_file}")
    print("OVERALL VALIDATION:", validation_status)
    print("\nChecks performed:")
    for check_name, result in validation_results.items():
        print(f"  - {check_name.title()}: {'PASSED' if result else 'FAILED'}")

    return validation_results, all_passed, any_run


def main():
    """Main entry point."""
    args = parse_arguments()
    _, success, any_run = run_checks(args.output_dir, args.checks, args.workers)

    if not any_run:
        print("\nNo checks matched the selection. Check the --checks argument.")
        return 1
    if not success:
        print("\nWARNING: Some acceptance checks failed. Review the validation log.")
        return 1

    print("\nAll performed acceptance checks passed.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
