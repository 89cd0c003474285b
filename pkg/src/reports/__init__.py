"""Reports package"""

from .generator import (
    ExperimentReport,
    aggregate_rows,
    aggregates_json,
    build_report,
    write_report,
    load_errors,
    load_rows,
    recompute_aggregates,
)

__all__ = [
    "ExperimentReport", "aggregate_rows", "aggregates_json", "build_report",
    "write_report", "load_errors", "load_rows", "recompute_aggregates",
]
