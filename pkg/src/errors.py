"""Exception hierarchy shared by every package"""

from typing import Optional


class PacError(Exception):
    """Base class for all toolkit errors"""


class InvalidArgumentError(PacError, ValueError):
    """An argument is outside its documented domain"""


class DimensionMismatchError(PacError, ValueError):
    """Feature vectors do not match the model's input size"""


class InvalidConfigError(PacError, ValueError):
    """A training or experiment configuration is unusable"""


class EmptyInputError(PacError, ValueError):
    """An operation received no data to work on"""


class TrialError(PacError):
    """A single experiment trial failed"""

    def __init__(self, message: str, seed: Optional[int] = None):
        super().__init__(message)
        self.seed = seed


class StorageError(PacError, OSError):
    """Reading or writing a report, record or model file failed"""
