"""
Trajectory CSV/JSON export and loading.
"""

from magnetic_curves.data_processing.exporter import (
    CSV_COLUMNS,
    to_json,
    trajectory_frame,
    trajectory_summary,
    write_json,
    write_trajectory_csv,
)
from magnetic_curves.data_processing.loader import get_output_path, load_trajectory
