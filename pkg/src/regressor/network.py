"""
Two-layer perceptron with a mean head and a log-sigma head

Parameter vector layout (also the on-disk order):
    W1          hidden_dim x feature_dim, row-major
    b1          hidden_dim
    w_mu        hidden_dim
    b_mu        1
    w_logsigma  hidden_dim
    b_logsigma  1
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from src.errors import DimensionMismatchError, InvalidArgumentError, StorageError
from src.models import GaussianPrediction


def parameter_count(feature_dim: int, hidden_dim: int) -> int:
    return hidden_dim * feature_dim + hidden_dim + 2 * (hidden_dim + 1)


@dataclass(frozen=True, eq=False)
class RegressorModel:
    """Heteroscedastic regressor; immutable once built"""
    parameters: np.ndarray
    feature_dim: int
    hidden_dim: int

    def __post_init__(self):
        if self.feature_dim < 1 or self.hidden_dim < 1:
            raise InvalidArgumentError(
                f"feature_dim and hidden_dim must be positive, got {self.feature_dim}, {self.hidden_dim}"
            )
        params = np.array(self.parameters, dtype=float).ravel()
        expected = parameter_count(self.feature_dim, self.hidden_dim)
        if params.size != expected:
            raise DimensionMismatchError(f"expected {expected} parameters, got {params.size}")
        params.setflags(write=False)
        object.__setattr__(self, 'parameters', params)

    @classmethod
    def zeros(cls, feature_dim: int, hidden_dim: int) -> 'RegressorModel':
        return cls(np.zeros(parameter_count(feature_dim, hidden_dim)), feature_dim, hidden_dim)

    def unpack(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, np.ndarray, float]:
        return unpack_parameters(self.parameters, self.feature_dim, self.hidden_dim)


def unpack_parameters(params: np.ndarray, feature_dim: int, hidden_dim: int):
    """Split a flat parameter vector into (W1, b1, w_mu, b_mu, w_logsigma, b_logsigma)"""
    d, h = feature_dim, hidden_dim
    offset = 0
    w1 = params[offset:offset + h * d].reshape(h, d)
    offset += h * d
    b1 = params[offset:offset + h]
    offset += h
    w_mu = params[offset:offset + h]
    offset += h
    b_mu = params[offset]
    offset += 1
    w_logsigma = params[offset:offset + h]
    offset += h
    b_logsigma = params[offset]
    return w1, b1, w_mu, b_mu, w_logsigma, b_logsigma


def _as_matrix(model: RegressorModel, features) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2 or x.shape[1] != model.feature_dim:
        raise DimensionMismatchError(
            f"expected features of size {model.feature_dim}, got shape {np.shape(features)}"
        )
    return x


def forward(model: RegressorModel, x: np.ndarray):
    """Hidden activations, means and log-sigmas for a feature matrix"""
    return forward_parameters(model.parameters, model.feature_dim, model.hidden_dim, x)


def forward_parameters(params: np.ndarray, feature_dim: int, hidden_dim: int, x: np.ndarray):
    w1, b1, w_mu, b_mu, w_logsigma, b_logsigma = unpack_parameters(params, feature_dim, hidden_dim)
    hidden = np.tanh(x @ w1.T + b1)
    mu = hidden @ w_mu + b_mu
    log_sigma = hidden @ w_logsigma + b_logsigma
    return hidden, mu, log_sigma


def predict_batch(model: RegressorModel, features) -> Tuple[np.ndarray, np.ndarray]:
    """Means and standard deviations for every row of a feature matrix"""
    _, mu, log_sigma = forward(model, _as_matrix(model, features))
    return mu, np.exp(log_sigma)


def predict(model: RegressorModel, features) -> GaussianPrediction:
    x = np.asarray(features, dtype=float)
    if x.ndim != 1:
        raise DimensionMismatchError(f"expected a single feature vector, got shape {x.shape}")
    mu, sigma = predict_batch(model, x)
    return GaussianPrediction(float(mu[0]), float(sigma[0]))


def save_model(model: RegressorModel, path: Union[str, Path]) -> None:
    """Write the header line then one parameter per line with 17 significant digits"""
    lines = [f"{model.feature_dim} {model.hidden_dim}"]
    lines.extend(format(float(p), '.17g') for p in model.parameters)
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding='utf-8')
    except OSError as e:
        raise StorageError(f"cannot write model to {path}: {e}") from e


def load_model(path: Union[str, Path]) -> RegressorModel:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise StorageError(f"cannot read model from {path}: {e}") from e

    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidArgumentError(f"model file {path} is empty")
    try:
        feature_dim, hidden_dim = (int(v) for v in lines[0].split())
        params = np.array([float(v) for v in lines[1:]])
    except ValueError as e:
        raise InvalidArgumentError(f"malformed model file {path}: {e}") from e
    return RegressorModel(params, feature_dim, hidden_dim)
