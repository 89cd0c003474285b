#!/usr/bin/env python3
"""
Report generator for experiment suites
Writes per-trial rows (CSV), per-class rows (CSV) and aggregates (JSON)
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from src import config
from src.errors import InvalidArgumentError, StorageError
logger = logging.getLogger(__name__)

ROW_COLUMNS = [
    'seed', 'shift', 'epsilon', 'method', 'feasible', 'scale', 'k_required', 'n_cal', 'n_test',
    'coverage', 'avg_width', 'width_std', 'narrow_pct', 'wide_pct',
    'mae', 'macro_mae', 'ma_acc', 'err_0_5', 'err_6_10', 'err_11_plus', 'letter_floored',
]
CLASS_COLUMNS = ['seed', 'epsilon', 'method', 'klass', 'count', 'coverage', 'avg_width', 'mae']
ERROR_COLUMNS = ['seed', 'error']

METRIC_COLUMNS = [
    'scale', 'coverage', 'avg_width', 'width_std', 'narrow_pct', 'wide_pct',
    'mae', 'macro_mae', 'ma_acc', 'err_0_5', 'err_6_10', 'err_11_plus',
]
INTEGER_COLUMNS = ['seed', 'k_required', 'n_cal', 'n_test', 'letter_floored']


@dataclass
class ExperimentReport:
    """Rows plus the aggregates recomputable from them"""
    rows: pd.DataFrame
    class_rows: pd.DataFrame
    aggregates: Dict
    errors: List[Dict] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.errors


def _normalize_rows(rows: pd.DataFrame) -> pd.DataFrame:
    missing = [c for c in ROW_COLUMNS if c not in rows.columns]
    if missing:
        raise InvalidArgumentError(f"rows are missing columns: {missing}")
    df = rows[ROW_COLUMNS].copy()
    for column in INTEGER_COLUMNS:
        df[column] = pd.to_numeric(df[column]).astype('Int64')
    df['feasible'] = df['feasible'].astype(bool)
    return df.sort_values(['seed', 'epsilon', 'method'], kind='stable').reset_index(drop=True)


def _finite_or_none(value) -> Optional[float]:
    if value is None or pd.isna(value) or not math.isfinite(float(value)):
        return None
    return float(value)


def aggregate_rows(rows: pd.DataFrame, provenance: Dict, errors: Sequence[Dict] = ()) -> Dict:
    """Mean and sample standard deviation per (method, epsilon) for every metric"""
    df = _normalize_rows(rows)
    groups = []
    for (method, epsilon), group in df.groupby(['method', 'epsilon'], sort=True):
        metrics = {}
        for column in METRIC_COLUMNS:
            values = pd.to_numeric(group[column], errors='coerce').dropna()
            metrics[column] = {
                'mean': _finite_or_none(values.mean()) if len(values) else None,
                'std': _finite_or_none(values.std(ddof=1)) if len(values) > 1 else None,
            }
        groups.append({
            'method': method,
            'epsilon': float(epsilon),
            'trials': int(len(group)),
            'feasible_trials': int(group['feasible'].sum()),
            'metrics': metrics,
        })
    return {
        'provenance': provenance,
        'status': 'partial' if errors else 'complete',
        'errors': list(errors),
        'groups': groups,
    }


def build_report(rows: Sequence[Dict], class_rows: Sequence[Dict], provenance: Dict,
                 errors: Sequence[Dict] = ()) -> ExperimentReport:
    rows_df = _normalize_rows(pd.DataFrame(list(rows), columns=ROW_COLUMNS))
    class_df = pd.DataFrame(list(class_rows), columns=CLASS_COLUMNS)
    return ExperimentReport(
        rows=rows_df,
        class_rows=class_df,
        aggregates=aggregate_rows(rows_df, provenance, errors),
        errors=list(errors),
    )


def aggregates_json(aggregates: Dict) -> str:
    return json.dumps(aggregates, indent=2) + "\n"


def write_report(report: ExperimentReport, out_dir: Union[str, Path]) -> Path:
    """Write rows, class rows, failed seeds and aggregates into out_dir"""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        report.rows.to_csv(out / config.ROWS_FILE, index=False)
        report.class_rows.to_csv(out / config.CLASSES_FILE, index=False)
        pd.DataFrame(report.errors, columns=ERROR_COLUMNS).to_csv(out / config.ERRORS_FILE, index=False)
        (out / config.AGGREGATES_FILE).write_text(aggregates_json(report.aggregates), encoding='utf-8')
    except OSError as e:
        raise StorageError(f"cannot write report to {out}: {e}") from e
    logger.info("report written to %s (%d rows)", out, len(report.rows))
    return out


def load_rows(path: Union[str, Path]) -> pd.DataFrame:
    try:
        return pd.read_csv(path, float_precision='round_trip')
    except FileNotFoundError as e:
        raise StorageError(f"rows file not found: {path}") from e
    except (OSError, pd.errors.EmptyDataError) as e:
        raise StorageError(f"cannot read rows from {path}: {e}") from e


def load_errors(path: Union[str, Path]) -> List[Dict]:
    try:
        df = pd.read_csv(path, dtype={'error': str}, keep_default_na=False)
    except (OSError, pd.errors.EmptyDataError) as e:
        raise StorageError(f"cannot read errors from {path}: {e}") from e
    if list(df.columns) != ERROR_COLUMNS:
        raise InvalidArgumentError(f"expected columns {ERROR_COLUMNS}, got {list(df.columns)}")
    return [{'seed': int(r.seed), 'error': r.error} for r in df.itertuples(index=False)]


def recompute_aggregates(rows_path: Union[str, Path], errors_path: Optional[Union[str, Path]] = None) -> Dict:
    """
    Aggregates from a rows CSV. Provenance keeps only the seeds seen.

    Failed seeds leave no rows, so they come from the errors CSV, by default
    the one written next to the rows. Without it the status reads complete.
    """
    rows = load_rows(rows_path)
    seeds = sorted(int(s) for s in pd.unique(rows['seed'])) if 'seed' in rows.columns else []
    if errors_path is None:
        sibling = Path(rows_path).with_name(config.ERRORS_FILE)
        errors_path = sibling if sibling.exists() else None
    errors = load_errors(errors_path) if errors_path is not None else []
    return aggregate_rows(rows, {'config_hash': None, 'seeds': seeds}, errors)
