"""
Data Loading Module
==================

Functions for locating the output directory and reading trajectory CSV files
back into Trajectory objects.
"""

import json
import os
import sys
from pathlib import Path

import pandas as pd

from magnetic_curves.data_processing.exporter import CSV_COLUMNS, summary_path_for
from magnetic_curves.dynamics.integrator import Trajectory
from magnetic_curves.exceptions import DomainError
from magnetic_curves.geometry.frames import ModelParams

OUTPUT_DIR_ENV = "MAGNETIC_CURVES_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "output"


def get_output_path(output_dir=None):
    """
    Resolve the output directory.

    Args:
        output_dir (str or Path, optional): Explicit directory. If None, uses
            $MAGNETIC_CURVES_OUTPUT_DIR, falling back to ./output.

    Returns:
        Path
    """
    if output_dir is None:
        output_dir = os.getenv(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR)
    return Path(output_dir)


def load_summary(csv_path):
    """Read the sidecar JSON summary of a trajectory CSV, or None if absent."""
    summary_file = summary_path_for(csv_path)
    if not summary_file.exists():
        return None
    return json.loads(summary_file.read_text())


def load_trajectory(csv_path, metric=None, lam=None, killing=None, charge=None):
    """
    Load a trajectory CSV written by write_trajectory_csv.

    Model parameters come from the sidecar summary JSON; explicit arguments
    override it.

    Args:
        csv_path (str or Path): Trajectory CSV
        metric, lam, killing, charge: Optional overrides

    Returns:
        Trajectory

    Raises:
        DomainError: If columns are missing or the model cannot be determined
    """
    csv_path = Path(csv_path)
    print(f"Loading trajectory from {csv_path}", file=sys.stderr)
    df = pd.read_csv(csv_path, float_precision="round_trip")

    missing = [c for c in CSV_COLUMNS[:7] if c not in df.columns]
    if missing:
        raise DomainError(f"{csv_path} lacks columns {missing}")

    summary = load_summary(csv_path) or {}
    metric = metric if metric is not None else summary.get("metric")
    lam = lam if lam is not None else summary.get("lambda")
    killing = killing if killing is not None else summary.get("killing")
    if metric is None or lam is None or killing is None:
        raise DomainError(
            f"no summary next to {csv_path}; pass metric, lambda and killing explicitly"
        )
    meta = dict(summary.get("meta", {}))
    if charge is not None:
        meta["charge"] = float(charge)
    elif "charge" in summary:
        meta["charge"] = float(summary["charge"])

    return Trajectory(
        params=ModelParams(metric, lam),
        killing=killing,
        t=df["t"].to_numpy(),
        states=df[["x", "y", "z", "xp", "yp", "zp"]].to_numpy(),
        meta=meta,
    )
