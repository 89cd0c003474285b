"""
Calibration set CSV ingestion and CalibrationResult JSON
"""

import json
from pathlib import Path
from typing import List, Union

import pandas as pd

from src.errors import EmptyInputError, InvalidArgumentError, StorageError
from src.models import CalibrationRecord, CalibrationResult, PacTarget

RECORD_COLUMNS = ['mu', 'sigma', 'y']


def records_from_frame(df: pd.DataFrame) -> List[CalibrationRecord]:
    if list(df.columns) != RECORD_COLUMNS:
        raise InvalidArgumentError(f"expected columns {RECORD_COLUMNS}, got {list(df.columns)}")
    if df.empty:
        raise EmptyInputError("calibration file has no records")
    try:
        values = df.astype(float)
    except ValueError as e:
        raise InvalidArgumentError(f"non-numeric calibration value: {e}") from e
    return [
        CalibrationRecord.from_values(row.mu, row.sigma, row.y)
        for row in values.itertuples(index=False)
    ]


def load_records(path: Union[str, Path]) -> List[CalibrationRecord]:
    """Read a mu,sigma,y CSV into calibration records"""
    try:
        df = pd.read_csv(path)
    except FileNotFoundError as e:
        raise StorageError(f"calibration file not found: {path}") from e
    except pd.errors.EmptyDataError as e:
        raise EmptyInputError(f"calibration file is empty: {path}") from e
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e}") from e
    return records_from_frame(df)


def result_to_json(result: CalibrationResult) -> str:
    return json.dumps(result.to_dict())


def result_from_json(text: str) -> CalibrationResult:
    try:
        data = json.loads(text)
        target = PacTarget(float(data['epsilon']), float(data['delta']))
        return CalibrationResult(
            c_star=None if data['c_star'] is None else float(data['c_star']),
            target=target,
            n=int(data['n']),
            k_required=None if data['k_required'] is None else int(data['k_required']),
            feasible=bool(data['feasible']),
        )
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise InvalidArgumentError(f"malformed calibration result: {e}") from e
