"""
Visual acuity conversions

Four-level class mapping, letter scores and the letter-score error histogram.
"""

import logging
import math
from typing import Iterable, List, Sequence, Tuple, Union

from src import config
from src.errors import EmptyInputError, InvalidArgumentError
from src.models import ErrorRangeHistogram, VaLabel

logger = logging.getLogger(__name__)

# 11-level class -> 4-level class
FOUR_LEVEL = (0, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3)


def map_to_4level(label: Union[VaLabel, int]) -> int:
    if not isinstance(label, VaLabel):
        if isinstance(label, float) and not label.is_integer():
            raise InvalidArgumentError(f"VA class must be an integer, got {label}")
        label = VaLabel(int(label))
    return FOUR_LEVEL[label.klass]


def letter_score(decimal_acuity: float) -> float:
    """L = 85 + 50 * log10(F) for decimal acuity F in (0, 1]"""
    if not 0.0 < decimal_acuity <= 1.0:
        raise InvalidArgumentError(f"decimal acuity must lie in (0, 1], got {decimal_acuity}")
    return 85.0 + 50.0 * math.log10(decimal_acuity)


def label_to_acuity(value: float) -> Tuple[float, bool]:
    """
    Decimal acuity for a label-scale value, clamped to [0, 10] then floored.

    Returns the acuity and whether the floor was applied.
    """
    clamped = min(max(value, config.LABEL_MIN), config.LABEL_MAX)
    acuity = clamped / config.LABEL_MAX
    if acuity < config.LETTER_FLOOR:
        return config.LETTER_FLOOR, True
    return acuity, False


def letter_errors(ys: Sequence[float], mus: Sequence[float]) -> Tuple[List[float], int]:
    """Absolute letter-score errors between labels and point predictions, plus the floored row count"""
    if len(ys) != len(mus):
        raise InvalidArgumentError(f"{len(ys)} labels but {len(mus)} predictions")
    errors = []
    floored = 0
    for y, mu in zip(ys, mus):
        true_acuity, true_floored = label_to_acuity(y)
        pred_acuity, pred_floored = label_to_acuity(mu)
        floored += true_floored or pred_floored
        errors.append(abs(letter_score(true_acuity) - letter_score(pred_acuity)))
    if floored:
        logger.warning("%d of %d rows used the letter-score floor %.2f", floored, len(ys), config.LETTER_FLOOR)
    return errors, floored


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def error_range_distribution(errors: Iterable[float]) -> ErrorRangeHistogram:
    """Percent of errors in [0, 5], [6, 10] and [11, inf) after rounding to integers"""
    counts = [0, 0, 0]
    total = 0
    for error in errors:
        if not error >= 0:
            raise InvalidArgumentError(f"letter errors must be nonnegative, got {error}")
        rounded = _round_half_up(error)
        if rounded <= 5:
            counts[0] += 1
        elif rounded <= 10:
            counts[1] += 1
        else:
            counts[2] += 1
        total += 1
    if total == 0:
        raise EmptyInputError("no letter errors to bucket")
    return ErrorRangeHistogram(*(100.0 * c / total for c in counts))
