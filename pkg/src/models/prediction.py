"""Gaussian predictions, calibration records and intervals"""

import math
from dataclasses import dataclass
from typing import Optional

from src.errors import InvalidArgumentError


@dataclass(frozen=True)
class GaussianPrediction:
    """Predicted mean and standard deviation for one example"""
    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise InvalidArgumentError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class CalibrationRecord:
    """A prediction paired with its ground-truth label"""
    prediction: GaussianPrediction
    y: float

    @classmethod
    def from_values(cls, mu: float, sigma: float, y: float) -> 'CalibrationRecord':
        return cls(GaussianPrediction(float(mu), float(sigma)), float(y))


@dataclass(frozen=True)
class Interval:
    """
    Closed interval [lower, upper].

    Symmetric intervals remember their half-width so that widths built from
    the same radius compare exactly equal.
    """
    lower: float
    upper: float
    radius: Optional[float] = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise InvalidArgumentError(f"lower {self.lower} exceeds upper {self.upper}")

    @classmethod
    def around(cls, center: float, radius: float) -> 'Interval':
        if radius < 0:
            raise InvalidArgumentError(f"radius must be nonnegative, got {radius}")
        if math.isinf(radius):
            return cls.unbounded()
        return cls(center - radius, center + radius, radius)

    @classmethod
    def unbounded(cls) -> 'Interval':
        return cls(-math.inf, math.inf, math.inf)

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lower) and math.isfinite(self.upper)

    @property
    def width(self) -> float:
        if self.radius is not None:
            return 2.0 * self.radius
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper
