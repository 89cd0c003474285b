"""
Interval metrics: coverage, width, clinical width share, MA-ACC and a per-class breakdown
"""

from collections import defaultdict
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from src.errors import EmptyInputError, InvalidArgumentError
from src.models import EvaluatedExample
from .acuity import map_to_4level


def _require(examples: Sequence[EvaluatedExample]):
    if len(examples) == 0:
        raise EmptyInputError("no examples to evaluate")


def _require_intervals(examples: Sequence[EvaluatedExample]):
    _require(examples)
    if any(e.interval is None for e in examples):
        raise InvalidArgumentError("every example needs an interval")


def coverage_rate(examples: Sequence[EvaluatedExample]) -> float:
    """Percent of examples whose label lies in the closed interval"""
    _require_intervals(examples)
    return 100.0 * sum(e.covered for e in examples) / len(examples)


def widths(examples: Sequence[EvaluatedExample]) -> np.ndarray:
    _require_intervals(examples)
    if any(not e.interval.is_bounded for e in examples):
        raise InvalidArgumentError("unbounded interval has no width")
    return np.array([e.interval.width for e in examples])


def average_width(examples: Sequence[EvaluatedExample]) -> float:
    return float(np.mean(widths(examples)))


def width_std(examples: Sequence[EvaluatedExample]) -> float:
    """Population standard deviation of widths; exactly 0 for constant-width intervals"""
    w = widths(examples)
    if np.all(w == w[0]):
        return 0.0
    return float(np.std(w))


def width_fraction(examples: Sequence[EvaluatedExample], max_width: float) -> float:
    """Percent of intervals no wider than max_width"""
    w = widths(examples)
    return 100.0 * float(np.mean(w <= max_width))


def interval_ma_acc(examples: Sequence[EvaluatedExample]) -> float:
    """
    Macro-averaged accuracy over the four-level classes.

    An interval counts as correct when it contains the 11-level label y.
    """
    _require_intervals(examples)
    per_class: Dict[int, List[bool]] = defaultdict(list)
    for e in examples:
        per_class[map_to_4level(e.label)].append(e.covered)
    accuracies = [np.mean(hits) for _, hits in sorted(per_class.items())]
    return 100.0 * float(np.mean(accuracies))


def class_breakdown(examples: Sequence[EvaluatedExample]) -> pd.DataFrame:
    """One row per present VA class: count, coverage, average width and MAE"""
    _require_intervals(examples)
    rows = []
    grouped: Dict[int, List[EvaluatedExample]] = defaultdict(list)
    for e in examples:
        grouped[e.label.klass].append(e)

    for klass, members in sorted(grouped.items()):
        bounded = all(m.interval.is_bounded for m in members)
        rows.append({
            'klass': klass,
            'count': len(members),
            'coverage': coverage_rate(members),
            'avg_width': average_width(members) if bounded else float('nan'),
            'mae': float(np.mean([m.abs_error for m in members])),
        })
    return pd.DataFrame(rows, columns=['klass', 'count', 'coverage', 'avg_width', 'mae'])
