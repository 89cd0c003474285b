"""Evaluated test examples and the letter-score error histogram"""

from dataclasses import dataclass
from typing import Optional

from src import config
from src.errors import InvalidArgumentError
from .prediction import Interval


@dataclass(frozen=True)
class VaLabel:
    """Categorized visual acuity level; klass k stands for decimal acuity k/10"""
    klass: int

    def __post_init__(self):
        if not config.LABEL_MIN <= self.klass <= config.LABEL_MAX:
            raise InvalidArgumentError(f"VA class must lie in [0, 10], got {self.klass}")

    @classmethod
    def from_value(cls, y: float) -> 'VaLabel':
        """Round a continuous label to the nearest class, clamped into range"""
        klass = int(round(y))
        return cls(min(max(klass, config.LABEL_MIN), config.LABEL_MAX))


@dataclass(frozen=True)
class EvaluatedExample:
    """A test example with its point prediction, sigma and optional interval"""
    y: float
    mu: float
    sigma: float
    interval: Optional[Interval] = None

    @property
    def covered(self) -> bool:
        return self.interval is not None and self.interval.contains(self.y)

    @property
    def abs_error(self) -> float:
        return abs(self.y - self.mu)

    @property
    def label(self) -> VaLabel:
        return VaLabel.from_value(self.y)


@dataclass(frozen=True)
class ErrorRangeHistogram:
    """Percentages of letter-score errors in [0, 5], [6, 10] and [11, inf)"""
    pct_0_5: float
    pct_6_10: float
    pct_11_plus: float

    def as_tuple(self) -> tuple:
        return self.pct_0_5, self.pct_6_10, self.pct_11_plus
