"""Point-prediction error metrics and the equal-mass error/sigma bins"""

from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

import numpy as np
import scipy.stats

from src.errors import EmptyInputError, InvalidArgumentError
from src.models import EvaluatedExample


def mae(examples: Sequence[EvaluatedExample]) -> float:
    if len(examples) == 0:
        raise EmptyInputError("no examples to evaluate")
    return float(np.mean([e.abs_error for e in examples]))


def macro_mae(examples: Sequence[EvaluatedExample]) -> float:
    """Unweighted mean over present VA classes of the per-class MAE"""
    if len(examples) == 0:
        raise EmptyInputError("no examples to evaluate")
    per_class: Dict[int, List[float]] = defaultdict(list)
    for e in examples:
        per_class[e.label.klass].append(e.abs_error)
    return float(np.mean([np.mean(errors) for _, errors in sorted(per_class.items())]))


def equal_mass_bins(examples: Sequence[EvaluatedExample], n_bins: int) -> List[Tuple[float, float]]:
    """
    Sort by absolute error, split into n_bins contiguous groups whose sizes
    differ by at most one (earlier bins take the remainder), and return
    (mean abs error, mean sigma) per bin.
    """
    if n_bins < 1:
        raise InvalidArgumentError(f"n_bins must be at least 1, got {n_bins}")
    if len(examples) < n_bins:
        raise EmptyInputError(f"{len(examples)} examples cannot fill {n_bins} bins")

    errors = np.array([e.abs_error for e in examples])
    sigmas = np.array([e.sigma for e in examples])
    order = np.argsort(errors, kind='stable')

    return [
        (float(errors[idx].mean()), float(sigmas[idx].mean()))
        for idx in np.array_split(order, n_bins)
    ]


def rank_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation"""
    if len(xs) != len(ys) or len(xs) < 2:
        raise InvalidArgumentError("rank correlation needs two equal-length sequences of at least 2 values")
    return float(scipy.stats.spearmanr(xs, ys).correlation)
