"""Value types shared across the toolkit"""

from .prediction import GaussianPrediction, CalibrationRecord, Interval
from .calibration import PacTarget, CalibrationResult, ConformalQuantile
from .evaluation import VaLabel, EvaluatedExample, ErrorRangeHistogram

__all__ = [
    "GaussianPrediction", "CalibrationRecord", "Interval",
    "PacTarget", "CalibrationResult", "ConformalQuantile",
    "VaLabel", "EvaluatedExample", "ErrorRangeHistogram",
]
