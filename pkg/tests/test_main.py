import json

import numpy as np
import pandas as pd
import pytest

from magnetic_curves.main import (
    EXIT_FAIL,
    EXIT_INTEGRATOR,
    EXIT_PASS,
    EXIT_UNKNOWN_FAMILY,
    EXIT_USAGE,
    RunConfig,
    main,
)
from magnetic_curves.exceptions import DomainError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_verify_circular_family(capsys):
    code, report = run(capsys, "verify", "--family", "g2-v4-circular", "--tol", "1e-9")
    assert code == EXIT_PASS
    assert report["pass"] is True
    assert report["n_samples"] == 1001


def test_verify_against_integration(capsys, tmp_path):
    code, report = run(
        capsys, "verify", "--family", "g2-v4-circular", "--t-end", "1",
        "--against-integration", "--output-dir", str(tmp_path),
    )
    assert code == EXIT_PASS
    assert report["integration_max_error"] < 1e-6
    assert (tmp_path / "verify_g2-v4-circular_derivation.json").exists()


def test_verify_printed_form_fails(capsys):
    code, report = run(
        capsys, "verify", "--family", "g1-v1-linear", "--variant", "as-printed",
        "--k", "1,0,1,0,0", "--tol", "1e-6",
    )
    assert code == EXIT_FAIL
    assert report["pass"] is False


def test_unknown_family(capsys):
    code, _ = run(capsys, "verify", "--family", "nosuch")
    assert code == EXIT_UNKNOWN_FAMILY


@pytest.mark.parametrize(
    "argv",
    [
        ("integrate", "--metric", "g1", "--killing", "V1"),
        ("integrate", "--metric", "g1", "--killing", "V9", "--lambda", "1"),
        ("integrate", "--metric", "g1", "--killing", "V1", "--lambda", "-1"),
        ("integrate", "--metric", "g1", "--killing", "V1", "--lambda", "1", "--init", "1,2,3"),
        ("killing-check", "--metric", "g3", "--lambda", "1"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_integrate_writes_csv_and_summary(capsys, isolated_output_dir):
    code, summary = run(
        capsys, "integrate", "--metric", "g1", "--killing", "V1", "--lambda", "1",
        "--init", "0,0,0,0,0,1", "--t-end", "1",
    )
    assert code == EXIT_PASS
    csv = isolated_output_dir / "g1_V1.csv"
    assert summary["csv"] == str(csv)
    assert (isolated_output_dir / "g1_V1.json").exists()
    df = pd.read_csv(csv)
    assert df["t"].iloc[-1] == pytest.approx(1.0)
    assert np.ptp(df["first_integral"]) < 1e-12
    assert summary["first_integral_drift"] < 1e-12


def test_integrate_step_underflow(capsys):
    code, _ = run(
        capsys, "integrate", "--metric", "g2", "--killing", "V4", "--lambda", "1",
        "--init", "2,0,0,0,-4,8", "--t-end", "5", "--dt", "1", "--dt-min", "1", "--dt-max", "1",
    )
    assert code == EXIT_INTEGRATOR


def test_repeat_runs_are_byte_identical(capsys, tmp_path):
    argv = ["integrate", "--metric", "g2", "--killing", "V4", "--lambda", "1",
            "--init", "2,0,0,0,-4,8", "--t-end", "2", "--method", "rk4", "--dt", "0.01"]
    main(argv + ["--output-dir", str(tmp_path / "a")])
    main(argv + ["--output-dir", str(tmp_path / "b")])
    capsys.readouterr()
    assert (tmp_path / "a" / "g2_V4.csv").read_bytes() == (tmp_path / "b" / "g2_V4.csv").read_bytes()


def test_rk4_run_passes_trajectory_check(capsys, isolated_output_dir):
    code, _ = run(
        capsys, "integrate", "--metric", "g2", "--killing", "V4", "--lambda", "1",
        "--init", "2,0,0,0,-4,8", "--t-end", "1", "--method", "rk4", "--dt", "0.001", "--name", "circle",
    )
    assert code == EXIT_PASS
    code, report = run(capsys, "check-trajectory", str(isolated_output_dir / "circle.csv"))
    assert code == EXIT_PASS
    assert report["mode"] == "finite-difference"


def test_adaptive_run_cannot_be_checked_by_differences(capsys, isolated_output_dir):
    run(capsys, "integrate", "--metric", "g2", "--killing", "V4", "--lambda", "1",
        "--init", "2,0,0,0,-4,8", "--t-end", "1", "--name", "adaptive")
    code, _ = run(capsys, "check-trajectory", str(isolated_output_dir / "adaptive.csv"))
    assert code == EXIT_USAGE


def test_killing_check(capsys):
    argv = ("killing-check", "--metric", "g1", "--lambda", "0.5", "--samples", "50", "--seed", "42")
    code, report = run(capsys, *argv)
    assert code == EXIT_PASS
    assert set(report["fields"]) == {"V1", "V2", "V3", "V4"}
    assert report["fields"]["V1"]["max_residual"] == 0.0

    _, again = run(capsys, *argv)
    assert again == report

    code, _ = run(capsys, *argv, "--tol", "0")
    assert code == EXIT_FAIL


def test_reduce_then_check(capsys, isolated_output_dir):
    code, summary = run(capsys, "reduce")
    assert code == EXIT_PASS
    assert summary["orbit"] == "dn"
    assert summary["verification"]["pass"] is True
    code, _ = run(capsys, "check-trajectory", summary["csv"])
    assert code == EXIT_PASS


def test_reduce_escaping_orbit(capsys):
    code, _ = run(capsys, "reduce", "--equation", "g1-v2", "--init", "0.2,0", "--t-end", "5")
    assert code == EXIT_INTEGRATOR


def test_families_listing(capsys):
    code, listing = run(capsys, "families")
    assert code == EXIT_PASS
    assert len(listing) == 7
    assert {entry["metric"] for entry in listing} == {"g1", "g2"}


def test_run_config_validation():
    assert RunConfig("integrate", killing="v2").killing.value == "V2"
    with pytest.raises(DomainError):
        RunConfig("integrate", metric="g3")
    with pytest.raises(DomainError):
        RunConfig("integrate", lam=0.0)
    with pytest.raises(DomainError):
        RunConfig("killing-check", tol=-1.0)


@pytest.mark.parametrize("charge", ["0", "0.5", "-1"])
def test_integrate_summary_drift_with_charge(capsys, charge):
    code, summary = run(
        capsys, "integrate", "--metric", "g1", "--killing", "V4", "--lambda", "1",
        "--init", "0.1,0.2,0,0.3,-0.2,0.5", "--t-end", "2", "--charge", charge,
        "--method", "rk4", "--dt", "0.001",
    )
    assert code == EXIT_PASS
    assert summary["charge"] == float(charge)
    assert summary["first_integral_drift"] < 1e-9
