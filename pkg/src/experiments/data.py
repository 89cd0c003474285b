"""
Synthetic datasets, seeded substreams, splits and test-time shift

Profiles:
    homoscedastic    y = 5 + 4*tanh(w.x) + 1.0*xi
    heteroscedastic  y = 5 + 4*tanh(w.x) + s(x)*xi, s(x) = 0.3 + 1.7*sigmoid(3*v.x) in (0.3, 2.0)
    imbalanced-va    y is a VA class drawn with the fundus dataset's class
                     frequencies; features are noisy views of the class whose
                     noise scale (recorded in feature 0) varies per example

Features of the first two profiles are uniform on [-1, 1]^d; w and v are
drawn once per dataset from the data substream.
"""

import hashlib
import logging
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np
import scipy.special

from src import config
from src.errors import InvalidConfigError
from .config import ExperimentConfig, NoiseProfile

logger = logging.getLogger(__name__)

HOMOSCEDASTIC_SIGMA = 1.0
SIGMA_MIN = 0.3
SIGMA_MAX = 2.0
QUALITY_RANGE = (0.1, 0.6)


def derive_seed(seed: int, tag: str) -> int:
    """Independent 64-bit substream seed for (trial seed, purpose tag)"""
    digest = hashlib.sha256(f"{seed}:{tag}".encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')


def substream(seed: int, tag: str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, tag))


@dataclass(frozen=True, eq=False)
class SyntheticDataset:
    """
    Features, continuous labels and the ground truth behind them.

    labels == true_mean + label_noise, and the noise-free features are
    features - feature_noise; apply_shift rescales both noise terms.
    """
    features: np.ndarray
    labels: np.ndarray
    true_mean: np.ndarray
    true_sigma: np.ndarray
    label_noise: np.ndarray
    feature_noise: np.ndarray
    indices: np.ndarray
    profile: NoiseProfile

    def __len__(self) -> int:
        return int(self.labels.size)

    @property
    def va_labels(self) -> np.ndarray:
        """Labels rounded to VA classes and clamped to [0, 10]"""
        return np.clip(np.rint(self.labels), config.LABEL_MIN, config.LABEL_MAX).astype(int)

    def subset(self, idx: np.ndarray) -> 'SyntheticDataset':
        return replace(
            self,
            features=self.features[idx],
            labels=self.labels[idx],
            true_mean=self.true_mean[idx],
            true_sigma=self.true_sigma[idx],
            label_noise=self.label_noise[idx],
            feature_noise=self.feature_noise[idx],
            indices=self.indices[idx],
        )


def _regression_profile(cfg: ExperimentConfig, rng: np.random.Generator) -> SyntheticDataset:
    n, d = cfg.n_examples, cfg.feature_dim
    w = rng.normal(0.0, 1.0, d) / np.sqrt(d)
    v = rng.normal(0.0, 1.0, d) / np.sqrt(d)
    x = rng.uniform(-1.0, 1.0, (n, d))

    mean = 5.0 + 4.0 * np.tanh(x @ w)
    if cfg.noise_profile is NoiseProfile.HOMOSCEDASTIC:
        sigma = np.full(n, HOMOSCEDASTIC_SIGMA)
    else:
        sigma = SIGMA_MIN + (SIGMA_MAX - SIGMA_MIN) * scipy.special.expit(3.0 * (x @ v))
    label_noise = sigma * rng.standard_normal(n)

    return SyntheticDataset(
        features=x,
        labels=mean + label_noise,
        true_mean=mean,
        true_sigma=sigma,
        label_noise=label_noise,
        feature_noise=np.zeros_like(x),
        indices=np.arange(n),
        profile=cfg.noise_profile,
    )


def _imbalanced_va_profile(cfg: ExperimentConfig, rng: np.random.Generator) -> SyntheticDataset:
    n, d = cfg.n_examples, cfg.feature_dim
    counts = np.asarray(config.VA_CLASS_COUNTS, dtype=float)
    klass = rng.choice(counts.size, size=n, p=counts / counts.sum())

    loadings = rng.uniform(0.5, 1.5, d - 1)
    quality = rng.uniform(*QUALITY_RANGE, size=n)
    z = (klass - 5.0) / 5.0

    signal = np.empty((n, d))
    signal[:, 0] = quality
    signal[:, 1:] = np.outer(z, loadings)
    noise = np.zeros((n, d))
    noise[:, 1:] = quality[:, None] * rng.standard_normal((n, d - 1))

    labels = klass.astype(float)
    return SyntheticDataset(
        features=signal + noise,
        labels=labels,
        true_mean=labels.copy(),
        # spread of the class estimate recoverable from the features, in label units
        true_sigma=5.0 * quality / np.linalg.norm(loadings),
        label_noise=np.zeros(n),
        feature_noise=noise,
        indices=np.arange(n),
        profile=cfg.noise_profile,
    )


def generate(cfg: ExperimentConfig, seed: int) -> SyntheticDataset:
    """Deterministic synthetic dataset for one trial seed"""
    rng = substream(seed, 'data')
    if cfg.noise_profile is NoiseProfile.IMBALANCED_VA:
        dataset = _imbalanced_va_profile(cfg, rng)
    else:
        dataset = _regression_profile(cfg, rng)
    logger.debug("generated %d %s examples for seed %d", len(dataset), cfg.noise_profile.value, seed)
    return dataset


def split_sizes(n: int, ratio: Tuple[float, float, float]) -> Tuple[int, int, int]:
    n_train = int(round(n * ratio[0]))
    n_val = int(round(n * ratio[1]))
    n_test = n - n_train - n_val
    if min(n_train, n_val, n_test) < 1:
        raise InvalidConfigError(f"split {ratio} of {n} examples leaves an empty part")
    return n_train, n_val, n_test


def split(dataset: SyntheticDataset, ratio: Tuple[float, float, float], seed: int):
    """Random disjoint (train, validation, test) parts"""
    if len(ratio) != 3 or any(r < 0 for r in ratio) or abs(sum(ratio) - 1.0) > 1e-9:
        raise InvalidConfigError(f"split ratio must be three proportions summing to 1, got {ratio}")
    n_train, n_val, _ = split_sizes(len(dataset), ratio)
    order = substream(seed, 'split').permutation(len(dataset))
    return (
        dataset.subset(order[:n_train]),
        dataset.subset(order[n_train:n_train + n_val]),
        dataset.subset(order[n_train + n_val:]),
    )


def apply_shift(dataset: SyntheticDataset, severity: float) -> SyntheticDataset:
    """Inflate the noise component by 1 + severity; severity 0 is the i.i.d. setting"""
    if not severity >= 0:
        raise InvalidConfigError(f"shift severity must be nonnegative, got {severity}")
    if severity == 0:
        return dataset

    factor = 1.0 + severity
    label_noise = dataset.label_noise * factor
    feature_noise = dataset.feature_noise * factor
    true_sigma = dataset.true_sigma * factor
    return replace(
        dataset,
        features=dataset.features - dataset.feature_noise + feature_noise,
        labels=dataset.true_mean + label_noise,
        true_sigma=true_sigma,
        label_noise=label_noise,
        feature_noise=feature_noise,
    )
