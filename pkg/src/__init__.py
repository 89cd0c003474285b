"""PAC prediction intervals with Clopper-Pearson calibration"""

from . import config

__version__ = "1.0.0"
__all__ = ["config"]
