"""Calibration targets and results"""

import math
from dataclasses import dataclass
from typing import Optional

from src.errors import InvalidArgumentError


def _check_probability(name: str, value: float):
    if not 0.0 < value < 1.0:
        raise InvalidArgumentError(f"{name} must lie in (0, 1), got {value}")


@dataclass(frozen=True)
class PacTarget:
    """Coverage error bound epsilon and significance level delta"""
    epsilon: float
    delta: float

    def __post_init__(self):
        _check_probability('epsilon', self.epsilon)
        _check_probability('delta', self.delta)


@dataclass(frozen=True)
class CalibrationResult:
    """
    Outcome of a PAC calibration.

    c_star and k_required are None when no scale can certify the target.
    """
    c_star: Optional[float]
    target: PacTarget
    n: int
    k_required: Optional[int]
    feasible: bool

    def to_dict(self) -> dict:
        return {
            'c_star': self.c_star,
            'epsilon': self.target.epsilon,
            'delta': self.target.delta,
            'n': self.n,
            'k_required': self.k_required,
            'feasible': self.feasible,
        }


@dataclass(frozen=True)
class ConformalQuantile:
    """Split-conformal residual quantile; q_hat is inf when the rank exceeds n"""
    q_hat: float
    alpha: float
    n: int

    def __post_init__(self):
        _check_probability('alpha', self.alpha)
        if not self.q_hat >= 0:
            raise InvalidArgumentError(f"q_hat must be nonnegative, got {self.q_hat}")

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.q_hat)
