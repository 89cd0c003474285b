"""Exact binomial and normal statistics"""

from .binomial import (
    BinomialObservation,
    cp_lower_bound,
    std_normal_cdf,
    std_normal_quantile,
)

__all__ = ["BinomialObservation", "cp_lower_bound", "std_normal_cdf", "std_normal_quantile"]
