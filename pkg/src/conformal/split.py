"""Vanilla split conformal regression with absolute-residual scores"""

import logging
import math
from typing import Iterable, List, Sequence

import numpy as np

from src.errors import EmptyInputError, InvalidArgumentError
from src.models import CalibrationRecord, ConformalQuantile, Interval

logger = logging.getLogger(__name__)

# absorbs representation error in (n + 1)(1 - alpha) before the ceiling
RANK_SLACK = 1e-9


def conformal_rank(n: int, alpha: float) -> int:
    return math.ceil((n + 1) * (1.0 - alpha) - RANK_SLACK)


def absolute_residuals(records: Sequence[CalibrationRecord]) -> List[float]:
    return [abs(r.prediction.mu - r.y) for r in records]


def vcp_calibrate(residuals: Iterable[float], alpha: float) -> ConformalQuantile:
    """q_hat is the ceil((n+1)(1-alpha))-th smallest residual, or inf if that rank exceeds n"""
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must lie in (0, 1), got {alpha}")
    ordered = np.sort(np.asarray(list(residuals), dtype=float))
    n = ordered.size
    if n == 0:
        raise EmptyInputError("no residuals to calibrate on")
    if np.isnan(ordered).any() or ordered[0] < 0:
        raise InvalidArgumentError("residuals must be nonnegative numbers")

    rank = conformal_rank(n, alpha)
    if rank > n:
        logger.warning("conformal rank %d exceeds n=%d at alpha=%g; interval is unbounded", rank, n, alpha)
        return ConformalQuantile(q_hat=math.inf, alpha=alpha, n=n)
    return ConformalQuantile(q_hat=float(ordered[max(rank, 1) - 1]), alpha=alpha, n=n)


def vcp_interval(point_prediction: float, q: ConformalQuantile) -> Interval:
    """Constant-width interval around a point prediction; unbounded when q_hat is inf"""
    return Interval.around(point_prediction, q.q_hat)
