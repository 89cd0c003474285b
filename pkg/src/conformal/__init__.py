"""Split conformal prediction baseline"""

from .split import conformal_rank, absolute_residuals, vcp_calibrate, vcp_interval

__all__ = ["conformal_rank", "absolute_residuals", "vcp_calibrate", "vcp_interval"]
