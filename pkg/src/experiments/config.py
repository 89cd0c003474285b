"""
Experiment configuration

Configs are plain dataclasses that can be built in code, from a mapping
(the web service) or from a flat key=value file (the CLI).
"""

import hashlib
import math
import numbers
from dataclasses import dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import Dict, Mapping, Tuple, Union

from src import config
from src.errors import InvalidConfigError, StorageError
from src.regressor import TrainConfig


def as_integer(value) -> int:
    """Integer value of an int, an integral float or a decimal string; anything else is rejected"""
    if isinstance(value, bool):
        raise InvalidConfigError(f"expected an integer, got {value!r}")
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real) and float(value).is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InvalidConfigError(f"expected an integer, got {value!r}")


class NoiseProfile(str, Enum):
    HOMOSCEDASTIC = 'homoscedastic'
    HETEROSCEDASTIC = 'heteroscedastic'
    IMBALANCED_VA = 'imbalanced-va'


class Predictor(str, Enum):
    REGRESSOR = 'regressor'
    ORACLE = 'oracle'


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a suite of trials depends on"""
    seed_list: Tuple[int, ...] = config.DEFAULT_SEEDS
    n_examples: int = config.DEFAULT_N_EXAMPLES
    feature_dim: int = config.DEFAULT_FEATURE_DIM
    epsilon_list: Tuple[float, ...] = config.DEFAULT_EPSILONS
    delta: float = config.DEFAULT_DELTA
    split_ratio: Tuple[float, float, float] = config.DEFAULT_SPLIT
    noise_profile: NoiseProfile = NoiseProfile.HETEROSCEDASTIC
    shift_severity: float = 0.0
    predictor: Predictor = Predictor.REGRESSOR
    clinical_width: float = config.CLINICAL_WIDTH
    train: TrainConfig = field(default_factory=TrainConfig)

    def __post_init__(self):
        object.__setattr__(self, 'seed_list', tuple(as_integer(s) for s in self.seed_list))
        object.__setattr__(self, 'epsilon_list', tuple(float(e) for e in self.epsilon_list))
        object.__setattr__(self, 'split_ratio', tuple(float(r) for r in self.split_ratio))
        try:
            object.__setattr__(self, 'noise_profile', NoiseProfile(self.noise_profile))
            object.__setattr__(self, 'predictor', Predictor(self.predictor))
        except ValueError as e:
            raise InvalidConfigError(str(e)) from e
        self._validate()

    def _validate(self):
        if not self.seed_list:
            raise InvalidConfigError("seed_list is empty")
        if any(s < 0 for s in self.seed_list):
            raise InvalidConfigError("seeds must be unsigned integers")
        if len(set(self.seed_list)) != len(self.seed_list):
            raise InvalidConfigError("seed_list contains duplicates")
        if self.n_examples < 3:
            raise InvalidConfigError(f"n_examples must be at least 3, got {self.n_examples}")
        if self.feature_dim < 1:
            raise InvalidConfigError(f"feature_dim must be at least 1, got {self.feature_dim}")
        if self.noise_profile is NoiseProfile.IMBALANCED_VA and self.feature_dim < 2:
            raise InvalidConfigError("imbalanced-va needs feature_dim >= 2")
        if not self.epsilon_list:
            raise InvalidConfigError("epsilon_list is empty")
        if any(not 0.0 < e < 1.0 for e in self.epsilon_list):
            raise InvalidConfigError(f"epsilons must lie in (0, 1), got {self.epsilon_list}")
        if not 0.0 < self.delta < 1.0:
            raise InvalidConfigError(f"delta must lie in (0, 1), got {self.delta}")
        if len(self.split_ratio) != 3 or any(r < 0 for r in self.split_ratio):
            raise InvalidConfigError(f"split_ratio must be three nonnegative proportions, got {self.split_ratio}")
        if not math.isclose(sum(self.split_ratio), 1.0, abs_tol=1e-9):
            raise InvalidConfigError(f"split_ratio must sum to 1, got {sum(self.split_ratio)}")
        if not self.shift_severity >= 0:
            raise InvalidConfigError(f"shift_severity must be nonnegative, got {self.shift_severity}")
        if not self.clinical_width > 0:
            raise InvalidConfigError(f"clinical_width must be positive, got {self.clinical_width}")
        if self.predictor is Predictor.ORACLE and self.noise_profile is NoiseProfile.IMBALANCED_VA:
            raise InvalidConfigError("oracle predictions need a well-specified profile, not imbalanced-va")

    def to_text(self) -> str:
        """Canonical key=value rendering; also the input of config_hash"""
        return "".join(f"{key} = {value}\n" for key, value in _flatten(self).items())

    def config_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode('utf-8')).hexdigest()[:16]


TRAIN_PREFIX = 'train.'

_LIST_KEYS = {'seed_list': as_integer, 'epsilon_list': float, 'split_ratio': float}
_SCALAR_KEYS = {
    'n_examples': as_integer,
    'feature_dim': as_integer,
    'delta': float,
    'noise_profile': str,
    'shift_severity': float,
    'predictor': str,
    'clinical_width': float,
}
_TRAIN_KEYS = {
    'learning_rate': float,
    'epochs': as_integer,
    'batch_size': as_integer,
    'seed': as_integer,
    'hidden_dim': as_integer,
    'max_grad_norm': float,
}


def _render(value) -> str:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, tuple):
        return ",".join(repr(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _flatten(cfg: ExperimentConfig) -> Dict[str, str]:
    flat = {}
    for f in fields(cfg):
        if f.name == 'train':
            continue
        flat[f.name] = _render(getattr(cfg, f.name))
    for f in fields(cfg.train):
        flat[TRAIN_PREFIX + f.name] = _render(getattr(cfg.train, f.name))
    return flat


def _parse(key: str, raw, kind):
    if isinstance(raw, str):
        raw = raw.strip()
    if key == TRAIN_PREFIX + 'max_grad_norm' and (raw is None or str(raw).lower() in ('none', '')):
        return None
    try:
        return kind(raw)
    except (TypeError, ValueError) as e:
        raise InvalidConfigError(f"bad value for {key}: {raw!r}") from e


def _parse_list(key: str, raw, kind) -> tuple:
    items = raw.split(',') if isinstance(raw, str) else list(raw)
    items = [item for item in items if not (isinstance(item, str) and not item.strip())]
    return tuple(_parse(key, item, kind) for item in items)


def config_from_mapping(values: Mapping[str, object]) -> ExperimentConfig:
    """Build a config from string or native values; unknown keys are errors"""
    top = {}
    train = {}
    for key, raw in values.items():
        if key in _LIST_KEYS:
            top[key] = _parse_list(key, raw, _LIST_KEYS[key])
        elif key in _SCALAR_KEYS:
            top[key] = _parse(key, raw, _SCALAR_KEYS[key])
        elif key.startswith(TRAIN_PREFIX) and key[len(TRAIN_PREFIX):] in _TRAIN_KEYS:
            name = key[len(TRAIN_PREFIX):]
            train[name] = _parse(key, raw, _TRAIN_KEYS[name])
        else:
            raise InvalidConfigError(f"unknown config key: {key}")
    return ExperimentConfig(train=TrainConfig(**train), **top)


def parse_config_text(text: str) -> ExperimentConfig:
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise InvalidConfigError(f"line {number}: expected key = value, got {line!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        if key in values:
            raise InvalidConfigError(f"line {number}: duplicate key {key}")
        values[key] = value
    return config_from_mapping(values)


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise StorageError(f"cannot read config {path}: {e}") from e
    return parse_config_text(text)

