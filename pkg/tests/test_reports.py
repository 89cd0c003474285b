"""Aggregation and report files"""

import json
import math

import pandas as pd
import pytest

from src import config
from src.errors import InvalidArgumentError, StorageError
from src.reports import aggregate_rows, build_report, load_errors, load_rows, recompute_aggregates, write_report
from src.reports.generator import ROW_COLUMNS


def _row(seed, epsilon, method, coverage, width, feasible=True):
    row = {column: 1.0 for column in ROW_COLUMNS}
    row.update({
        'seed': seed, 'shift': 0.0, 'epsilon': epsilon, 'method': method, 'feasible': feasible,
        'k_required': 10 if feasible else None, 'n_cal': 20, 'n_test': 20, 'letter_floored': 0,
        'coverage': coverage, 'avg_width': width,
    })
    return row


@pytest.fixture
def rows():
    return [
        _row(1, 0.3, 'PAC', 70.0, 2.0),
        _row(2, 0.3, 'PAC', 80.0, 4.0),
        _row(3, 0.3, 'PAC', 90.0, 3.0),
        _row(1, 0.3, 'VCP', 75.0, 2.5),
    ]


def test_group_means_and_sample_std(rows):
    aggregates = aggregate_rows(pd.DataFrame(rows), {'config_hash': 'x', 'seeds': [1, 2, 3]})
    pac, vcp = aggregates['groups']
    assert (pac['method'], pac['epsilon'], pac['trials']) == ('PAC', 0.3, 3)
    assert pac['metrics']['coverage']['mean'] == pytest.approx(80.0)
    assert pac['metrics']['coverage']['std'] == pytest.approx(10.0)
    assert pac['metrics']['avg_width']['mean'] == pytest.approx(3.0)
    assert vcp['metrics']['coverage']['std'] is None
    assert aggregates['status'] == 'complete'


def test_nan_metrics_are_skipped(rows):
    rows.append(_row(4, 0.3, 'PAC', math.nan, math.nan, feasible=False))
    aggregates = aggregate_rows(pd.DataFrame(rows), {'config_hash': 'x', 'seeds': [1, 2, 3, 4]})
    pac = aggregates['groups'][0]
    assert pac['trials'] == 4
    assert pac['feasible_trials'] == 3
    assert pac['metrics']['coverage']['mean'] == pytest.approx(80.0)


def test_all_nan_metric_is_null():
    rows = [_row(1, 0.1, 'PAC', math.nan, math.nan, feasible=False)]
    aggregates = aggregate_rows(pd.DataFrame(rows), {'config_hash': 'x', 'seeds': [1]})
    assert aggregates['groups'][0]['metrics']['coverage'] == {'mean': None, 'std': None}


def test_errors_mark_partial(rows):
    aggregates = aggregate_rows(pd.DataFrame(rows), {}, errors=[{'seed': 9, 'error': 'x'}])
    assert aggregates['status'] == 'partial'


def test_missing_columns():
    with pytest.raises(InvalidArgumentError):
        aggregate_rows(pd.DataFrame([{'seed': 1}]), {})


def test_written_report_recomputes_identically(tmp_path, rows):
    report = build_report(rows, [], {'config_hash': 'abc', 'seeds': [1, 2, 3]})
    write_report(report, tmp_path)

    written = json.loads((tmp_path / config.AGGREGATES_FILE).read_text())
    recomputed = recompute_aggregates(tmp_path / config.ROWS_FILE)
    assert recomputed['groups'] == written['groups']
    assert recomputed['provenance']['seeds'] == [1, 2, 3]

    reread = load_rows(tmp_path / config.ROWS_FILE)
    assert list(reread.columns) == ROW_COLUMNS
    assert reread['coverage'].mean() == pytest.approx(sum(r['coverage'] for r in rows) / len(rows))


def test_write_into_a_file_path_fails(tmp_path, rows):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    with pytest.raises(StorageError):
        write_report(build_report(rows, [], {}), blocker)


def test_missing_rows_file(tmp_path):
    with pytest.raises(StorageError):
        recompute_aggregates(tmp_path / "rows.csv")


def test_recomputed_report_keeps_failed_seeds(tmp_path, rows):
    errors = [{'seed': 4, 'error': 'seed 4: split too small, n=3'}]
    write_report(build_report(rows, [], {'config_hash': 'abc', 'seeds': [1, 2, 3, 4]}, errors), tmp_path)
    assert load_errors(tmp_path / config.ERRORS_FILE) == errors

    recomputed = recompute_aggregates(tmp_path / config.ROWS_FILE)
    assert recomputed['status'] == 'partial'
    assert recomputed['errors'] == errors


def test_recompute_without_errors_file(tmp_path, rows):
    write_report(build_report(rows, [], {}), tmp_path)
    assert load_errors(tmp_path / config.ERRORS_FILE) == []

    moved = tmp_path / "elsewhere" / config.ROWS_FILE
    moved.parent.mkdir()
    moved.write_bytes((tmp_path / config.ROWS_FILE).read_bytes())
    assert recompute_aggregates(moved)['status'] == 'complete'


def test_explicit_errors_file(tmp_path, rows):
    write_report(build_report(rows, [], {}), tmp_path)
    failures = tmp_path / "failures.csv"
    failures.write_text("seed,error\n7,diverged\n")
    recomputed = recompute_aggregates(tmp_path / config.ROWS_FILE, failures)
    assert recomputed['errors'] == [{'seed': 7, 'error': 'diverged'}]
