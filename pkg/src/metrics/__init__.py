"""Evaluation metrics and visual acuity conversions"""

from .acuity import (
    FOUR_LEVEL,
    map_to_4level,
    letter_score,
    label_to_acuity,
    letter_errors,
    error_range_distribution,
)
from .intervals import (
    coverage_rate,
    widths,
    average_width,
    width_std,
    width_fraction,
    interval_ma_acc,
    class_breakdown,
)
from .point import mae, macro_mae, equal_mass_bins, rank_correlation

__all__ = [
    "FOUR_LEVEL", "map_to_4level", "letter_score", "label_to_acuity", "letter_errors",
    "error_range_distribution", "coverage_rate", "widths", "average_width", "width_std",
    "width_fraction", "interval_ma_acc", "class_breakdown",
    "mae", "macro_mae", "equal_mass_bins", "rank_correlation",
]
