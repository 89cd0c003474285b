"""Command-line interface and exit codes"""

import json

import pytest

from src import config
from src.cli import main

SMALL_CONFIG = """\
# two quick trials
seed_list = 1, 2
n_examples = 200
feature_dim = 2
epsilon_list = 0.3
delta = 0.05
train.epochs = 2
train.hidden_dim = 4
"""


@pytest.fixture
def records_csv(tmp_path):
    path = tmp_path / "records.csv"
    path.write_text("mu,sigma,y\n0,1,0.5\n0,1,1.0\n0,1,1.5\n0,1,2.0\n")
    return path


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "suite.cfg"
    path.write_text(SMALL_CONFIG)
    return path


def test_calibrate_prints_json(records_csv, capsys):
    code = main(['calibrate', '--records', str(records_csv), '--epsilon', '0.2', '--delta', '0.5'])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result['c_star'] == 2.0
    assert result['k_required'] == 4
    assert result['feasible'] is True


def test_calibrate_infeasible_still_succeeds(records_csv, capsys):
    code = main(['calibrate', '--records', str(records_csv), '--epsilon', '0.05', '--delta', '0.001'])
    assert code == 0
    assert json.loads(capsys.readouterr().out)['feasible'] is False


def test_calibrate_missing_file_is_io_error(tmp_path):
    assert main(['calibrate', '--records', str(tmp_path / "none.csv"), '--epsilon', '0.2']) == 3


def test_calibrate_bad_header_is_usage_error(tmp_path):
    path = tmp_path / "records.csv"
    path.write_text("a,b,c\n1,2,3\n")
    assert main(['calibrate', '--records', str(path), '--epsilon', '0.2']) == 1


@pytest.mark.parametrize("argv", [[], ['run', '--parallel', 'many'], ['calibrate', '--epsilon', '0.2']])
def test_usage_errors_exit_one(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


def test_run_and_report(config_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(['run', '--config', str(config_file), '--out', str(out), '--parallel', '2']) == 0
    for name in (config.ROWS_FILE, config.CLASSES_FILE, config.AGGREGATES_FILE):
        assert (out / name).exists()
    capsys.readouterr()

    assert main(['report', '--rows', str(out / config.ROWS_FILE)]) == 0
    recomputed = json.loads(capsys.readouterr().out)
    written = json.loads((out / config.AGGREGATES_FILE).read_text())
    assert recomputed['groups'] == written['groups']

    target = tmp_path / "again.json"
    assert main(['report', '--rows', str(out / config.ROWS_FILE), '--out', str(target)]) == 0
    assert json.loads(target.read_text())['groups'] == written['groups']


def test_run_is_byte_identical(config_file, tmp_path):
    for name in ("a", "b"):
        assert main(['run', '--config', str(config_file), '--out', str(tmp_path / name)]) == 0
    for name in (config.ROWS_FILE, config.AGGREGATES_FILE):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_bad_config_is_usage_error(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("colour = blue\n")
    assert main(['run', '--config', str(path), '--out', str(tmp_path / "out")]) == 1


def test_failed_trials_exit_two(tmp_path):
    path = tmp_path / "tiny.cfg"
    path.write_text("seed_list = 1\nn_examples = 3\n")
    out = tmp_path / "out"
    assert main(['run', '--config', str(path), '--out', str(out)]) == 2
    aggregates = json.loads((out / config.AGGREGATES_FILE).read_text())
    assert aggregates['status'] == 'partial'
    assert aggregates['errors'][0]['seed'] == 1


def test_unwritable_output_is_io_error(config_file, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    assert main(['run', '--config', str(config_file), '--out', str(blocker)]) == 3


def test_report_missing_rows(tmp_path):
    assert main(['report', '--rows', str(tmp_path / "rows.csv")]) == 3
