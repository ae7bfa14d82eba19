"""
Killing Magnetic Curves - Main Module
====================================

Command-line entry point. Each sub-command prints its JSON report on stdout
and progress lines on stderr.

Exit codes: 0 pass, 1 verification failed, 2 usage error,
3 integration/quadrature failure, 4 unknown family.
"""

import argparse
import logging
import math
import sys
import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from magnetic_curves.data_processing.exporter import (
    summary_path_for,
    to_json,
    trajectory_summary,
    write_json,
    write_trajectory_csv,
)
from magnetic_curves.data_processing.loader import get_output_path, load_trajectory
from magnetic_curves.dynamics.integrator import IntegratorConfig, Method, integrate
from magnetic_curves.dynamics.lorentz import CurveState
from magnetic_curves.exceptions import (
    DomainError,
    GridTooCoarse,
    IntegrationError,
    MagneticCurvesError,
    ParamMismatch,
    QuadratureFailure,
    UnboundedOrbit,
    UnknownFamily,
    Unsupported,
)
from magnetic_curves.geometry.frames import CoordPoint, CoordVelocity, ModelParams
from magnetic_curves.geometry.killing import KillingId, max_killing_residual
from magnetic_curves.solutions.closedform import FAMILIES, ClosedFormCurve, FamilyId, FamilySpec
from magnetic_curves.solutions.elliptic import solve_reduced
from magnetic_curves.solutions.reduced import ReducedEquation, lift_reduced
from magnetic_curves.utils.parallel import process_in_parallel
from magnetic_curves.verification.residual import (
    DEFAULT_ANALYTIC_TOL,
    DEFAULT_FD_TOL,
    DEFAULT_GRID_POINTS,
    check_family,
    check_trajectory,
    compare,
    conservation_report,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTEGRATOR = 3
EXIT_UNKNOWN_FAMILY = 4


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one CLI invocation."""

    command: str
    metric: Optional[str] = None
    killing: Optional[KillingId] = None
    lam: Optional[float] = None
    init: Optional[Tuple[float, ...]] = None
    family: Optional[str] = None
    variant: str = "derivation"
    c: Optional[float] = None
    k: Optional[Tuple[float, ...]] = None
    c1: float = 0.0
    integrator: Optional[IntegratorConfig] = None
    output_dir: Optional[str] = None
    seed: int = 0
    tol: Optional[float] = None

    def __post_init__(self):
        if self.metric is not None and self.metric not in ("g1", "g2"):
            raise DomainError(f"metric must be g1 or g2, got {self.metric!r}")
        if self.killing is not None:
            object.__setattr__(self, "killing", KillingId.parse(self.killing))
        if self.lam is not None and not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be a positive real, got {self.lam}")
        if self.tol is not None and not self.tol >= 0:
            raise DomainError(f"tol must be non-negative, got {self.tol}")


def _float_list(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _progress(message):
    print(message, file=sys.stderr, flush=True)


def _emit(report):
    print(to_json(report))


def _output_dir(args):
    return get_output_path(args.output_dir)


def _integrator_config(args, t_end):
    return IntegratorConfig(
        t_end=t_end,
        method=Method.parse(args.method),
        dt=args.dt,
        abs_tol=args.tol,
        rel_tol=args.tol,
        dt_min=args.dt_min,
        dt_max=args.dt_max,
        unit_speed=getattr(args, "unit_speed", False),
    )


def cmd_integrate(args):
    """Integrate one trajectory, write its CSV and summary JSON."""
    if len(args.init) != 6:
        raise DomainError("--init needs six values x,y,z,xp,yp,zp")
    cfg = RunConfig(
        command="integrate",
        metric=args.metric,
        killing=args.killing,
        lam=args.lam,
        init=args.init,
        integrator=_integrator_config(args, args.t0 + args.t_end),
        output_dir=args.output_dir,
    )
    p = ModelParams(cfg.metric, cfg.lam)
    init = CurveState(args.t0, CoordPoint(*cfg.init[:3]), CoordVelocity(*cfg.init[3:]))

    _progress(f"Integrating {p.metric.value} {cfg.killing.value} to t={cfg.integrator.t_end:g}...")
    start = time.time()
    traj = integrate(p, cfg.killing, init, cfg.integrator, charge=args.charge)
    _progress(f"Integration completed in {time.time() - start:.2f} seconds ({len(traj)} samples)")

    drift = conservation_report(traj)
    rel = conservation_report(traj, relative=True)
    name = args.name or f"{p.metric.value}_{cfg.killing.value}"
    csv_path = write_trajectory_csv(traj, _output_dir(args) / f"{name}.csv")
    summary = trajectory_summary(
        traj,
        speed_drift=drift.speed,
        first_integral_drift=drift.first_integral,
        relative_speed_drift=rel.speed,
        relative_first_integral_drift=rel.first_integral,
        csv=str(csv_path),
    )
    write_json(summary, summary_path_for(csv_path))
    _emit(summary)
    return EXIT_PASS


def _family_spec(args):
    family = FamilyId.parse(args.family)
    info = FAMILIES[family]
    return FamilySpec(
        family=family,
        variant=args.variant,
        lam=info.default_lam if args.lam is None else args.lam,
        c=info.default_c if args.c is None else args.c,
        k=info.default_k if args.k is None else args.k,
        c1=args.c1,
    )


def cmd_verify(args):
    """Residual check of a closed-form family; optionally against integration."""
    spec = _family_spec(args)
    t_end = spec.info.default_t_end if args.t_end is None else args.t_end
    grid = np.linspace(0.0, t_end, args.points)

    start = time.time()
    report = check_family(spec, grid, tol=args.tol)
    _progress(f"Verification of {report.label} completed in {time.time() - start:.2f} seconds")
    out = report.to_dict()
    passed = report.passed

    if args.against_integration:
        curve = ClosedFormCurve(spec)
        cfg = IntegratorConfig(t_end=t_end, abs_tol=args.integration_tol, rel_tol=args.integration_tol)
        traj = integrate(spec.params, spec.killing, curve.initial_state(), cfg)
        deviation = compare(traj, curve)
        out["integration_max_error"] = deviation
        out["integration_match_tol"] = args.match_tol
        passed = passed and deviation <= args.match_tol
        out["pass"] = passed

    if args.output_dir:
        write_json(out, _output_dir(args) / f"verify_{spec.family.value}_{spec.variant.value}.json")
    _emit(out)
    return EXIT_PASS if passed else EXIT_FAIL


def _max_killing_residual(job):
    metric, lam, killing, points, h = job
    return max_killing_residual(ModelParams(metric, lam), killing, points, h)


def cmd_killing_check(args):
    """Killing-equation residuals of V1..V4 at seeded random points."""
    cfg = RunConfig(command="killing-check", metric=args.metric, lam=args.lam, seed=args.seed, tol=args.tol)
    rng = np.random.default_rng(cfg.seed)
    points = [tuple(pt) for pt in rng.uniform(-args.box, args.box, size=(args.samples, 3))]
    jobs = [(cfg.metric, cfg.lam, k.value, points, args.h) for k in KillingId]

    start = time.time()
    maxima = process_in_parallel(_max_killing_residual, jobs, n_workers=args.workers)
    _progress(f"Killing check completed in {time.time() - start:.2f} seconds")

    fields = {k.value: {"max_residual": r, "pass": bool(r < cfg.tol)} for k, r in zip(KillingId, maxima)}
    passed = all(entry["pass"] for entry in fields.values())
    report = {
        "metric": cfg.metric,
        "lambda": cfg.lam,
        "samples": args.samples,
        "seed": cfg.seed,
        "h": args.h,
        "tol": cfg.tol,
        "fields": fields,
        "pass": passed,
    }
    if args.output_dir:
        write_json(report, _output_dir(args) / f"killing_{cfg.metric}.json")
    _emit(report)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_reduce(args):
    """Solve a reduced equation at c = 0, lift it to 3-D and verify the lift."""
    r = ReducedEquation(args.equation, lam=args.lam, c=args.c, variant=args.variant)
    if len(args.init) != 2:
        raise DomainError("--init needs two values u,up")
    grid = np.linspace(0.0, args.t_end, args.points)

    start = time.time()
    solution = solve_reduced(r, args.init, grid, method=args.method)
    traj = lift_reduced(r, solution.t, solution.u, solution.up)
    _progress(f"Reduced solve ({solution.kind}) completed in {time.time() - start:.2f} seconds")

    report = check_trajectory(traj, tol=args.tol)
    name = f"reduced_{r.which.value}_{r.variant.value}"
    csv_path = write_trajectory_csv(traj, _output_dir(args) / f"{name}.csv")
    summary = trajectory_summary(
        traj,
        orbit=solution.kind,
        energy=solution.energy.E,
        period=solution.period,
        verification=report.to_dict(),
        csv=str(csv_path),
    )
    write_json(summary, summary_path_for(csv_path))
    _emit(summary)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_families(args):
    """List the registered closed-form families."""
    listing = [
        {
            "name": family.value,
            "metric": info.metric.value,
            "killing": info.killing.value,
            "description": info.description,
            "default_lambda": info.default_lam,
            "default_c": info.default_c,
            "default_k": list(info.default_k),
            "default_t_end": info.default_t_end,
        }
        for family, info in FAMILIES.items()
    ]
    _emit(listing)
    return EXIT_PASS


def cmd_check_trajectory(args):
    """Re-verify a trajectory CSV written by integrate or reduce."""
    traj = load_trajectory(args.path, metric=args.metric, lam=args.lam, killing=args.killing)
    start = time.time()
    report = check_trajectory(traj, tol=args.tol)
    _progress(f"Trajectory check completed in {time.time() - start:.2f} seconds")
    out = report.to_dict()
    rel = conservation_report(traj, relative=True)
    out["relative_speed_drift"] = rel.speed
    out["relative_first_integral_drift"] = rel.first_integral
    _emit(out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _add_integrator_flags(parser):
    parser.add_argument("--method", default="rk45", help="rk45 (adaptive) or rk4 (fixed step)")
    parser.add_argument("--tol", type=float, default=1e-10, help="Absolute and relative tolerance")
    parser.add_argument("--dt", type=float, default=1e-3, help="RK4 step / initial adaptive step")
    parser.add_argument("--dt-min", type=float, default=1e-12, help="Smallest adaptive step")
    parser.add_argument("--dt-max", type=float, default=0.1, help="Largest adaptive step")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magnetic-curves",
        description="Killing magnetic curves in the Lorentzian-Heisenberg spaces (H3, g1), (H3, g2)",
    )
    parser.add_argument("--verbose", action="store_true", help="Enable debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="Integrate a magnetic trajectory")
    p.add_argument("--metric", required=True, choices=["g1", "g2"])
    p.add_argument("--killing", required=True, help="V1, V2, V3 or V4")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="Metric parameter > 0")
    p.add_argument("--init", type=_float_list, default=(0.0, 0.0, 0.0, 0.0, 0.0, 1.0),
                   help="x,y,z,xp,yp,zp at t0")
    p.add_argument("--t0", type=float, default=0.0, help="Initial time")
    p.add_argument("--t-end", type=float, default=1.0, help="Integration span")
    p.add_argument("--charge", type=float, default=1.0, help="Field multiplier q")
    p.add_argument("--unit-speed", action="store_true", help="Normalize the initial speed")
    p.add_argument("--name", help="Output file stem")
    p.add_argument("--output-dir", help="Output directory (default $MAGNETIC_CURVES_OUTPUT_DIR or ./output)")
    _add_integrator_flags(p)
    p.set_defaults(handler=cmd_integrate)

    p = sub.add_parser("verify", help="Verify a closed-form family")
    p.add_argument("--family", required=True, help="Family name (see `families`)")
    p.add_argument("--variant", default="derivation", help="derivation or as-printed")
    p.add_argument("--lambda", dest="lam", type=float, help="Metric parameter > 0")
    p.add_argument("--c", type=float, help="First-integral constant")
    p.add_argument("--k", type=_float_list, help="k1,...,k5")
    p.add_argument("--c1", type=float, default=0.0, help="Additive z constant (V4 families)")
    p.add_argument("--t-end", type=float, help="End of the sample grid")
    p.add_argument("--points", type=int, default=DEFAULT_GRID_POINTS, help="Grid size")
    p.add_argument("--tol", type=float, default=DEFAULT_ANALYTIC_TOL, help="Pass threshold")
    p.add_argument("--against-integration", action="store_true",
                   help="Also integrate from the curve's initial state and compare")
    p.add_argument("--integration-tol", type=float, default=1e-10)
    p.add_argument("--match-tol", type=float, default=1e-6)
    p.add_argument("--output-dir", help="Also write the report here")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("killing-check", help="Killing residuals at random points")
    p.add_argument("--metric", required=True, choices=["g1", "g2"])
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--h", type=float, default=1e-5, help="Finite-difference step")
    p.add_argument("--box", type=float, default=2.0, help="Points are drawn from [-box, box]^3")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output-dir", help="Also write the report here")
    p.set_defaults(handler=cmd_killing_check)

    p = sub.add_parser("reduce", help="Solve and lift a reduced equation at c = 0")
    p.add_argument("--equation", default="g2-v3", help="g1-v2, g1-v3, g2-v2 or g2-v3")
    p.add_argument("--variant", default="derivation", help="derivation or as-printed")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--init", type=_float_list, default=(0.5, 0.0), help="u,up at t=0")
    p.add_argument("--t-end", type=float, default=5.0)
    p.add_argument("--points", type=int, default=DEFAULT_GRID_POINTS)
    p.add_argument("--method", default="auto", choices=["auto", "quadrature"])
    p.add_argument("--tol", type=float, default=DEFAULT_FD_TOL)
    p.add_argument("--output-dir", help="Output directory")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("families", help="List closed-form families")
    p.set_defaults(handler=cmd_families)

    p = sub.add_parser("check-trajectory", help="Re-verify a trajectory CSV")
    p.add_argument("path", help="CSV written by integrate or reduce")
    p.add_argument("--tol", type=float, default=DEFAULT_FD_TOL)
    p.add_argument("--metric", choices=["g1", "g2"])
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--killing")
    p.set_defaults(handler=cmd_check_trajectory)

    return parser


def main(argv=None):
    """
    Command-line entry point.

    Returns:
        int: Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)

    try:
        return args.handler(args)
    except UnknownFamily as e:
        _progress(f"ERROR: {e}")
        return EXIT_UNKNOWN_FAMILY
    except (IntegrationError, QuadratureFailure, UnboundedOrbit) as e:
        _progress(f"ERROR: {e}")
        return EXIT_INTEGRATOR
    except (DomainError, Unsupported, GridTooCoarse, ParamMismatch) as e:
        _progress(f"ERROR: {e}")
        return EXIT_USAGE
    except MagneticCurvesError as e:
        _progress(f"ERROR: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
