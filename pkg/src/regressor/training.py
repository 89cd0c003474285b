"""
Negative log-likelihood training for the heteroscedastic regressor
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src import config
from src.errors import DimensionMismatchError, EmptyInputError, InvalidArgumentError, InvalidConfigError
from src.models import GaussianPrediction
from .network import RegressorModel, forward_parameters, parameter_count, unpack_parameters

logger = logging.getLogger(__name__)

HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class TrainConfig:
    """Mini-batch gradient descent settings"""
    learning_rate: float = config.DEFAULT_LEARNING_RATE
    epochs: int = config.DEFAULT_EPOCHS
    batch_size: int = config.DEFAULT_BATCH_SIZE
    seed: int = 0
    hidden_dim: int = config.DEFAULT_HIDDEN_DIM
    max_grad_norm: Optional[float] = config.DEFAULT_MAX_GRAD_NORM

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise InvalidConfigError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.epochs < 1:
            raise InvalidConfigError(f"epochs must be at least 1, got {self.epochs}")
        if self.batch_size < 1:
            raise InvalidConfigError(f"batch_size must be at least 1, got {self.batch_size}")
        if self.hidden_dim < 1:
            raise InvalidConfigError(f"hidden_dim must be at least 1, got {self.hidden_dim}")
        if self.seed < 0:
            raise InvalidConfigError(f"seed must be nonnegative, got {self.seed}")
        if self.max_grad_norm is not None and not self.max_grad_norm > 0:
            raise InvalidConfigError(f"max_grad_norm must be positive, got {self.max_grad_norm}")


@dataclass
class TrainingRun:
    """A fitted model and the full-dataset mean NLL before training, for the returned model and after each epoch"""
    model: RegressorModel
    initial_loss: float
    final_loss: float
    epoch_losses: List[float] = field(default_factory=list)


def nll_loss(pred: GaussianPrediction, y: float) -> float:
    """Gaussian negative log-likelihood of y under N(mu, sigma^2)"""
    if not pred.sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {pred.sigma}")
    residual = y - pred.mu
    return 0.5 * math.log(2.0 * math.pi * pred.sigma ** 2) + residual ** 2 / (2.0 * pred.sigma ** 2)


def _mean_nll(params: np.ndarray, d: int, h: int, x: np.ndarray, y: np.ndarray) -> float:
    _, mu, log_sigma = forward_parameters(params, d, h, x)
    scaled = (y - mu) * np.exp(-log_sigma)
    return float(np.mean(HALF_LOG_2PI + log_sigma + 0.5 * scaled ** 2))


def _gradient(params: np.ndarray, d: int, h: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Gradient of the mean batch NLL with respect to the flat parameter vector"""
    w1, b1, w_mu, b_mu, w_logsigma, b_logsigma = unpack_parameters(params, d, h)
    m = x.shape[0]

    hidden, mu, log_sigma = forward_parameters(params, d, h, x)
    inv_var = np.exp(-2.0 * log_sigma)
    residual = y - mu

    # per-example derivatives of the NLL, already divided by batch size
    d_mu = -residual * inv_var / m
    d_log_sigma = (1.0 - residual ** 2 * inv_var) / m

    d_hidden = np.outer(d_mu, w_mu) + np.outer(d_log_sigma, w_logsigma)
    d_pre = d_hidden * (1.0 - hidden ** 2)

    return np.concatenate([
        (d_pre.T @ x).ravel(),
        d_pre.sum(axis=0),
        hidden.T @ d_mu,
        [d_mu.sum()],
        hidden.T @ d_log_sigma,
        [d_log_sigma.sum()],
    ])


def _as_arrays(batch: Sequence[Tuple[Sequence[float], float]], feature_dim: Optional[int] = None):
    if len(batch) == 0:
        raise EmptyInputError("batch is empty")
    rows = [np.asarray(features, dtype=float).ravel() for features, _ in batch]
    sizes = {row.size for row in rows}
    if len(sizes) != 1:
        raise DimensionMismatchError(f"inconsistent feature sizes: {sorted(sizes)}")
    x = np.vstack(rows)
    if feature_dim is not None and x.shape[1] != feature_dim:
        raise DimensionMismatchError(f"expected features of size {feature_dim}, got {x.shape[1]}")
    y = np.array([float(target) for _, target in batch])
    return x, y


def nll_gradient(model: RegressorModel, batch: Sequence[Tuple[Sequence[float], float]]) -> np.ndarray:
    """Gradient of the mean batch NLL with respect to all model parameters"""
    x, y = _as_arrays(batch, model.feature_dim)
    return _gradient(model.parameters, model.feature_dim, model.hidden_dim, x, y)


def mean_nll(model: RegressorModel, features: np.ndarray, targets: np.ndarray) -> float:
    x = np.asarray(features, dtype=float)
    if x.ndim != 2 or x.shape[1] != model.feature_dim:
        raise DimensionMismatchError(f"expected features of size {model.feature_dim}, got shape {x.shape}")
    return _mean_nll(model.parameters, model.feature_dim, model.hidden_dim, x, np.asarray(targets, dtype=float))


def initial_parameters(feature_dim: int, hidden_dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer"""
    hidden_bound = 1.0 / math.sqrt(feature_dim)
    head_bound = 1.0 / math.sqrt(hidden_dim)
    hidden_part = rng.uniform(-hidden_bound, hidden_bound, size=hidden_dim * feature_dim + hidden_dim)
    head_part = rng.uniform(-head_bound, head_bound, size=2 * (hidden_dim + 1))
    params = np.concatenate([hidden_part, head_part])
    assert params.size == parameter_count(feature_dim, hidden_dim)
    return params


def train_arrays(features: np.ndarray, targets: np.ndarray, train_config: TrainConfig) -> TrainingRun:
    """Fit on a feature matrix and target vector"""
    x = np.asarray(features, dtype=float)
    y = np.asarray(targets, dtype=float).ravel()
    if x.ndim != 2 or x.shape[0] == 0:
        raise EmptyInputError("training set is empty")
    if x.shape[0] != y.size:
        raise DimensionMismatchError(f"{x.shape[0]} feature rows but {y.size} targets")

    n, d = x.shape
    h = train_config.hidden_dim
    rng = np.random.default_rng(train_config.seed)
    params = initial_parameters(d, h, rng)

    initial_loss = _mean_nll(params, d, h, x, y)
    best_params, best_loss = params, initial_loss
    epoch_losses = []
    logger.debug("training on %d examples, %d features, initial NLL %.4f", n, d, initial_loss)

    for epoch in range(train_config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, train_config.batch_size):
            idx = order[start:start + train_config.batch_size]
            grad = _gradient(params, d, h, x[idx], y[idx])
            if train_config.max_grad_norm is not None:
                norm = float(np.linalg.norm(grad))
                if norm > train_config.max_grad_norm:
                    grad = grad * (train_config.max_grad_norm / norm)
            params = params - train_config.learning_rate * grad

        epoch_losses.append(_mean_nll(params, d, h, x, y))
        logger.debug("epoch %d/%d NLL %.4f", epoch + 1, train_config.epochs, epoch_losses[-1])
        if epoch_losses[-1] < best_loss:
            best_params, best_loss = params, epoch_losses[-1]

    # the returned model never scores worse than its initialisation
    final_loss = epoch_losses[-1]
    if not final_loss <= initial_loss:
        logger.warning("final NLL %.4f above initial %.4f, keeping best epoch (NLL %.4f)", final_loss, initial_loss, best_loss)
        params, final_loss = best_params, best_loss

    logger.info("trained %d epochs: NLL %.4f -> %.4f", train_config.epochs, initial_loss, final_loss)
    return TrainingRun(RegressorModel(params, d, h), initial_loss, final_loss, epoch_losses)


def train(dataset: Sequence[Tuple[Sequence[float], float]], train_config: TrainConfig) -> TrainingRun:
    x, y = _as_arrays(dataset)
    return train_arrays(x, y, train_config)


def fit(dataset: Sequence[Tuple[Sequence[float], float]], train_config: TrainConfig) -> RegressorModel:
    """Train a regressor by mini-batch gradient descent on the mean NLL"""
    return train(dataset, train_config).model
