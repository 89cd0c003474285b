"""
PAC prediction intervals

Scores each calibration record by |y - mu| / sigma, picks the smallest scale
c whose Clopper-Pearson lower coverage bound reaches 1 - epsilon, and builds
intervals [mu - c*sigma, mu + c*sigma].
"""

import logging
import math
from typing import Iterable, List, Sequence

import numpy as np

from src import config
from src.errors import EmptyInputError, InvalidArgumentError
from src.models import CalibrationRecord, CalibrationResult, GaussianPrediction, Interval, PacTarget
from src.stats import cp_lower_bound, std_normal_cdf

logger = logging.getLogger(__name__)


def normalized_score(record: CalibrationRecord) -> float:
    """Smallest scale c whose interval covers the record's label"""
    sigma = record.prediction.sigma
    if not sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
    return abs(record.y - record.prediction.mu) / sigma


def required_count(n: int, target: PacTarget) -> int:
    """
    Smallest k with cp_lower_bound(k, n, delta) >= 1 - epsilon, or 0 if none.

    The bound is nondecreasing in k, so a binary search over [1, n] suffices.
    """
    goal = 1.0 - target.epsilon
    if cp_lower_bound(n, n, target.delta) < goal:
        return 0

    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if cp_lower_bound(mid, n, target.delta) >= goal:
            hi = mid
        else:
            lo = mid + 1
    return lo


def calibrate_scores(scores: Iterable[float], target: PacTarget) -> CalibrationResult:
    """Calibrate directly from precomputed nonnegative scores"""
    ordered = np.sort(np.asarray(list(scores), dtype=float))
    n = ordered.size
    if n == 0:
        raise EmptyInputError("calibration set is empty")
    if np.isnan(ordered).any() or ordered[0] < 0:
        raise InvalidArgumentError("scores must be nonnegative numbers")

    k_required = required_count(n, target)
    if k_required == 0:
        logger.warning(
            "calibration infeasible: n=%d cannot certify coverage %.4f at delta=%g",
            n, 1.0 - target.epsilon, target.delta,
        )
        return CalibrationResult(c_star=None, target=target, n=n, k_required=None, feasible=False)

    c_star = float(ordered[k_required - 1])
    logger.debug("calibrated c*=%.6f with k=%d of n=%d", c_star, k_required, n)
    return CalibrationResult(c_star=c_star, target=target, n=n, k_required=k_required, feasible=True)


def calibrate(records: Sequence[CalibrationRecord], target: PacTarget) -> CalibrationResult:
    """Find the minimal width scale c* certified by the Clopper-Pearson bound"""
    if len(records) == 0:
        raise EmptyInputError("calibration set is empty")
    return calibrate_scores((normalized_score(r) for r in records), target)


def build_interval(pred: GaussianPrediction, c: float) -> Interval:
    if not c >= 0:
        raise InvalidArgumentError(f"scale c must be nonnegative, got {c}")
    if not pred.sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {pred.sigma}")
    return Interval.around(pred.mu, c * pred.sigma)


def build_intervals(predictions: Iterable[GaussianPrediction], c: float) -> List[Interval]:
    return [build_interval(pred, c) for pred in predictions]


def clip_interval(interval: Interval, low: float = config.LABEL_MIN, high: float = config.LABEL_MAX) -> Interval:
    """Clamp an interval into the label range; for reporting only"""
    lower = min(max(interval.lower, low), high)
    upper = max(min(interval.upper, high), low)
    return Interval(lower, upper)


def analytic_coverage(c: float) -> float:
    """True coverage of the scale-c interval when predictions are the exact Gaussian"""
    if math.isinf(c):
        return 1.0
    return 2.0 * std_normal_cdf(c) - 1.0
