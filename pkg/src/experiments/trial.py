"""
One experiment trial: train, calibrate on validation, evaluate on test
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from src import config
from src.conformal import conformal_rank, vcp_calibrate
from src.errors import TrialError
from src.metrics import (
    class_breakdown,
    coverage_rate,
    error_range_distribution,
    interval_ma_acc,
    letter_errors,
    macro_mae,
    mae,
    width_fraction,
    width_std,
    widths,
    average_width,
)
from src.models import EvaluatedExample, Interval, PacTarget
from src.pac import calibrate_scores
from src.regressor import predict_batch, train_arrays
from src.reports.generator import ROW_COLUMNS
from .config import ExperimentConfig, Predictor
from .data import apply_shift, derive_seed, generate, split

logger = logging.getLogger(__name__)

PAC = 'PAC'
VCP = 'VCP'


@dataclass
class TrialOutput:
    rows: List[Dict] = field(default_factory=list)
    class_rows: List[Dict] = field(default_factory=list)


@dataclass(frozen=True)
class _Predictions:
    val_mu: np.ndarray
    val_sigma: np.ndarray
    test_mu: np.ndarray
    test_sigma: np.ndarray


def _predict(cfg: ExperimentConfig, seed: int, train_part, val_part, test_part, shifted_test) -> _Predictions:
    if cfg.predictor is Predictor.ORACLE:
        # the oracle knows the i.i.d. ground truth, not the shift
        return _Predictions(val_part.true_mean, val_part.true_sigma, test_part.true_mean, test_part.true_sigma)

    train_config = replace(cfg.train, seed=derive_seed(seed, 'train') % 2 ** 32)
    run = train_arrays(train_part.features, train_part.labels, train_config)
    val_mu, val_sigma = predict_batch(run.model, val_part.features)
    test_mu, test_sigma = predict_batch(run.model, shifted_test.features)
    return _Predictions(val_mu, val_sigma, test_mu, test_sigma)


def _interval_metrics(examples: Sequence[EvaluatedExample], clinical_width: float) -> Dict:
    bounded = all(e.interval.is_bounded for e in examples)
    return {
        'coverage': coverage_rate(examples),
        'avg_width': average_width(examples) if bounded else math.nan,
        'width_std': width_std(examples) if bounded else math.nan,
        'narrow_pct': width_fraction(examples, clinical_width) if bounded else math.nan,
        'wide_pct': 100.0 * float(np.mean(widths(examples) >= config.WIDE_WIDTH)) if bounded else math.nan,
        'ma_acc': interval_ma_acc(examples),
    }


def _empty_interval_metrics() -> Dict:
    return {key: math.nan for key in ('coverage', 'avg_width', 'width_std', 'narrow_pct', 'wide_pct', 'ma_acc')}


def _with_intervals(y, mu, sigma, radii) -> List[EvaluatedExample]:
    return [
        EvaluatedExample(float(yi), float(mi), float(si), Interval.around(float(mi), float(ri)))
        for yi, mi, si, ri in zip(y, mu, sigma, radii)
    ]


def _class_rows(seed: int, epsilon: float, method: str, examples: Sequence[EvaluatedExample]) -> List[Dict]:
    table = class_breakdown(examples)
    table.insert(0, 'method', method)
    table.insert(0, 'epsilon', epsilon)
    table.insert(0, 'seed', seed)
    return table.to_dict('records')


def _evaluate(cfg: ExperimentConfig, seed: int) -> TrialOutput:
    data = generate(cfg, seed)
    train_part, val_part, test_part = split(data, cfg.split_ratio, seed)
    shifted_test = apply_shift(test_part, cfg.shift_severity)
    preds = _predict(cfg, seed, train_part, val_part, test_part, shifted_test)

    y_val = val_part.labels
    y_test = shifted_test.labels
    residuals = np.abs(y_val - preds.val_mu)
    scores = residuals / preds.val_sigma

    point_examples = [
        EvaluatedExample(float(y), float(m), float(s))
        for y, m, s in zip(y_test, preds.test_mu, preds.test_sigma)
    ]
    letters, floored = letter_errors(list(y_test), list(preds.test_mu))
    histogram = error_range_distribution(letters)
    shared = {
        'seed': seed,
        'shift': cfg.shift_severity,
        'n_cal': len(val_part),
        'n_test': len(shifted_test),
        'mae': mae(point_examples),
        'macro_mae': macro_mae(point_examples),
        'err_0_5': histogram.pct_0_5,
        'err_6_10': histogram.pct_6_10,
        'err_11_plus': histogram.pct_11_plus,
        'letter_floored': floored,
    }

    output = TrialOutput()
    for epsilon in cfg.epsilon_list:
        pac = calibrate_scores(scores, PacTarget(epsilon, cfg.delta))
        if pac.feasible:
            examples = _with_intervals(y_test, preds.test_mu, preds.test_sigma, pac.c_star * preds.test_sigma)
            metrics = _interval_metrics(examples, cfg.clinical_width)
            output.class_rows.extend(_class_rows(seed, epsilon, PAC, examples))
        else:
            metrics = _empty_interval_metrics()
        output.rows.append({
            **shared, 'epsilon': epsilon, 'method': PAC, 'feasible': pac.feasible,
            'scale': pac.c_star if pac.feasible else math.nan,
            'k_required': pac.k_required, **metrics,
        })

        q = vcp_calibrate(residuals, epsilon)
        examples = _with_intervals(y_test, preds.test_mu, preds.test_sigma, np.full(y_test.size, q.q_hat))
        output.class_rows.extend(_class_rows(seed, epsilon, VCP, examples))
        output.rows.append({
            **shared, 'epsilon': epsilon, 'method': VCP, 'feasible': q.is_finite,
            'scale': q.q_hat if q.is_finite else math.nan,
            'k_required': conformal_rank(q.n, epsilon) if q.is_finite else None,
            **_interval_metrics(examples, cfg.clinical_width),
        })

    logger.info("trial seed=%d finished: %d rows", seed, len(output.rows))
    return output


def evaluate_trial(cfg: ExperimentConfig, seed: int) -> TrialOutput:
    """
    Rows and per-class rows for one seed, one row per (epsilon, method).

    Any failure comes back as TrialError with the seed attached.
    """
    try:
        return _evaluate(cfg, seed)
    except Exception as e:
        raise TrialError(f"trial seed={seed} failed: {e}", seed=seed) from e


def run_trial(cfg: ExperimentConfig, seed: int) -> List[Dict]:
    return evaluate_trial(cfg, seed).rows


def rows_frame(rows: Sequence[Dict]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=ROW_COLUMNS)
