"""Heteroscedastic Gaussian regressor trained on the negative log-likelihood"""

from .network import (
    RegressorModel,
    parameter_count,
    predict,
    predict_batch,
    save_model,
    load_model,
)
from .training import (
    TrainConfig,
    TrainingRun,
    nll_loss,
    nll_gradient,
    mean_nll,
    fit,
    train,
    train_arrays,
)

__all__ = [
    "RegressorModel", "parameter_count", "predict", "predict_batch", "save_model", "load_model",
    "TrainConfig", "TrainingRun", "nll_loss", "nll_gradient", "mean_nll", "fit", "train", "train_arrays",
]
