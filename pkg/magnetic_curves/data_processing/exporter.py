"""
Data Export Module
==================

Trajectory CSV files and JSON summaries. Floats are written with 17
significant digits so that re-reading a file reproduces every sample exactly.
"""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from magnetic_curves.dynamics.lorentz import CurveState, first_integral
from magnetic_curves.geometry.frames import CoordPoint, CoordVelocity, frame_components

CSV_COLUMNS = ["t", "x", "y", "z", "xp", "yp", "zp", "speed", "first_integral"]
FLOAT_FORMAT = "%.17g"

# meta entries that vary between identical runs
_VOLATILE_META = ("elapsed_seconds",)


def trajectory_frame(traj):
    """
    Tabulate a trajectory.

    Returns:
        DataFrame with columns t, x, y, z, xp, yp, zp, speed, first_integral
    """
    pos, vel = traj.positions.T, traj.velocities.T
    a = frame_components(traj.params, CoordPoint(*pos), CoordVelocity(*vel))
    speed = a[0] * a[0] + a[1] * a[1] - a[2] * a[2]
    state = CurveState(traj.t, CoordPoint(*pos), CoordVelocity(*vel))
    integral = first_integral(traj.params, traj.killing, state, traj.charge)
    data = np.column_stack([traj.t, traj.positions, traj.velocities, speed, integral])
    return pd.DataFrame(data, columns=CSV_COLUMNS)


def trajectory_summary(traj, **extra):
    """JSON-ready description of a trajectory (parameters, solver meta, extras)."""
    meta = {k: v for k, v in traj.meta.items() if k not in _VOLATILE_META}
    summary = {
        "metric": traj.params.metric.value,
        "lambda": traj.params.lam,
        "killing": traj.killing.value,
        "charge": traj.charge,
        "n_samples": len(traj),
        "t_start": float(traj.t[0]),
        "t_end": float(traj.t[-1]),
        "meta": meta,
    }
    summary.update(extra)
    return summary


def write_trajectory_csv(traj, path):
    """
    Write a trajectory CSV.

    Args:
        traj: Trajectory
        path: Output file; parent directories are created

    Returns:
        Path: The written file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    trajectory_frame(traj).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def _to_builtin(value):
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def to_json(obj):
    """Serialize to a deterministic JSON string (sorted keys, numpy scalars unwrapped)."""
    return json.dumps(_to_builtin(obj), indent=2, sort_keys=True)


def write_json(obj, path):
    """Write obj as deterministic JSON; returns the Path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(obj) + "\n")
    return path


def summary_path_for(csv_path):
    """Sidecar summary file of a trajectory CSV: same stem, .json suffix."""
    return Path(csv_path).with_suffix(".json")
