"""Seeded synthetic experiments: data, splits, trials and suites"""

from .config import (
    ExperimentConfig,
    NoiseProfile,
    Predictor,
    config_from_mapping,
    parse_config_text,
    load_config,
)
from .data import SyntheticDataset, derive_seed, substream, generate, split, split_sizes, apply_shift
from .trial import PAC, VCP, TrialOutput, evaluate_trial, run_trial, rows_frame
from .suite import run_suite

__all__ = [
    "ExperimentConfig", "NoiseProfile", "Predictor", "config_from_mapping", "parse_config_text",
    "load_config", "SyntheticDataset", "derive_seed", "substream", "generate", "split", "split_sizes",
    "apply_shift", "PAC", "VCP", "TrialOutput", "evaluate_trial", "run_trial", "rows_frame", "run_suite",
]
