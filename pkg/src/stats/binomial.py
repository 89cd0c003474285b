"""
Exact binomial statistics

One-sided Clopper-Pearson lower confidence bounds and the standard normal
CDF/quantile used by the synthetic oracles.
"""

import math
from dataclasses import dataclass

import scipy.optimize
import scipy.special
import scipy.stats

from src import config
from src.errors import InvalidArgumentError


@dataclass(frozen=True)
class BinomialObservation:
    """k successes out of n trials"""
    successes: int
    trials: int

    def __post_init__(self):
        _check_counts(self.successes, self.trials)

    def lower_bound(self, delta: float) -> float:
        return cp_lower_bound(self.successes, self.trials, delta)


def _check_counts(k: int, n: int):
    if n < 1:
        raise InvalidArgumentError(f"trials must be at least 1, got {n}")
    if not 0 <= k <= n:
        raise InvalidArgumentError(f"successes must lie in [0, {n}], got {k}")


def _check_delta(delta: float):
    if not 0.0 < delta < 1.0:
        raise InvalidArgumentError(f"delta must lie in (0, 1), got {delta}")


def cp_lower_bound(k: int, n: int, delta: float) -> float:
    """
    One-sided Clopper-Pearson lower bound.

    Returns p_L solving Pr[Bin(n, p_L) >= k] = delta, or 0 when k = 0.
    The binomial tail is evaluated through the regularized incomplete beta
    function, which stays accurate for calibration sets of many thousands.
    """
    _check_counts(k, n)
    _check_delta(delta)

    if k == 0:
        return 0.0
    if k == n:
        # Pr[Bin(n, p) >= n] = p^n
        return delta ** (1.0 / n)

    def tail_gap(p: float) -> float:
        return scipy.stats.binom.sf(k - 1, n, p) - delta

    return float(scipy.optimize.brentq(tail_gap, 0.0, 1.0, xtol=config.ROOT_TOLERANCE))


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF"""
    if not math.isfinite(z):
        raise InvalidArgumentError(f"z must be finite, got {z}")
    return float(scipy.special.ndtr(z))


def std_normal_quantile(p: float) -> float:
    """Inverse of std_normal_cdf"""
    if not 0.0 < p < 1.0:
        raise InvalidArgumentError(f"p must lie in (0, 1), got {p}")
    return float(scipy.special.ndtri(p))
