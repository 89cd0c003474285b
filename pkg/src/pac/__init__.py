"""PAC prediction intervals calibrated with the Clopper-Pearson bound"""

from .calibration import (
    normalized_score,
    required_count,
    calibrate,
    calibrate_scores,
    build_interval,
    build_intervals,
    clip_interval,
    analytic_coverage,
)
from .io import load_records, records_from_frame, result_to_json, result_from_json

__all__ = [
    "normalized_score", "required_count", "calibrate", "calibrate_scores",
    "build_interval", "build_intervals", "clip_interval", "analytic_coverage",
    "load_records", "records_from_frame", "result_to_json", "result_from_json",
]
