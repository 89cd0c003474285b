"""Experiment configs, synthetic data, trials and suites"""

import json
import math

import numpy as np
import pandas as pd
import pytest

from src import config
from src.errors import InvalidConfigError, StorageError, TrialError
from src.experiments import (
    PAC,
    VCP,
    ExperimentConfig,
    NoiseProfile,
    Predictor,
    apply_shift,
    config_from_mapping,
    derive_seed,
    evaluate_trial,
    generate,
    load_config,
    parse_config_text,
    rows_frame,
    run_suite,
    run_trial,
    split,
    split_sizes,
)
from src.regressor import TrainConfig
from src.reports.generator import ROW_COLUMNS

FAST_TRAIN = TrainConfig(epochs=2, batch_size=32, hidden_dim=4)


def _small_config(**overrides):
    values = dict(
        seed_list=(1, 2, 3, 4, 5),
        n_examples=300,
        feature_dim=3,
        epsilon_list=(0.2, 0.3, 0.4),
        delta=0.05,
        train=FAST_TRAIN,
    )
    values.update(overrides)
    return ExperimentConfig(**values)


class TestConfig:
    def test_defaults(self):
        cfg = ExperimentConfig()
        assert cfg.delta == 1e-5
        assert cfg.epsilon_list == (0.2, 0.3, 0.4)
        assert cfg.split_ratio == (0.6, 0.2, 0.2)
        assert cfg.predictor is Predictor.REGRESSOR

    def test_parse_text(self):
        cfg = parse_config_text(
            "# suite\n"
            "seed_list = 7, 8\n"
            "\n"
            "epsilon_list = 0.3  # one level\n"
            "noise_profile = homoscedastic\n"
            "train.epochs = 5\n"
            "train.max_grad_norm = none\n"
        )
        assert cfg.seed_list == (7, 8)
        assert cfg.epsilon_list == (0.3,)
        assert cfg.noise_profile is NoiseProfile.HOMOSCEDASTIC
        assert cfg.train.epochs == 5
        assert cfg.train.max_grad_norm is None

    def test_text_roundtrip(self):
        cfg = _small_config(shift_severity=0.5, predictor='oracle')
        assert parse_config_text(cfg.to_text()) == cfg

    def test_hash_tracks_content(self):
        assert _small_config().config_hash() == _small_config().config_hash()
        assert _small_config().config_hash() != _small_config(delta=0.1).config_hash()

    @pytest.mark.parametrize("text", [
        "unknown_key = 1\n",
        "seed_list = 1\nseed_list = 2\n",
        "delta = lots\n",
        "no equals sign\n",
        "delta = 1.5\n",
        "split_ratio = 0.5, 0.5, 0.5\n",
        "seed_list = 1, 1\n",
        "noise_profile = bimodal\n",
        "train.epochs = 0\n",
    ])
    def test_invalid_config(self, text):
        with pytest.raises(InvalidConfigError):
            parse_config_text(text)

    def test_oracle_needs_well_specified_profile(self):
        with pytest.raises(InvalidConfigError):
            ExperimentConfig(predictor='oracle', noise_profile='imbalanced-va')

    def test_mapping_accepts_native_values(self):
        cfg = config_from_mapping({'seed_list': [3, 4], 'delta': 0.05, 'train.hidden_dim': 8})
        assert cfg.seed_list == (3, 4)
        assert cfg.train.hidden_dim == 8

    @pytest.mark.parametrize("values", [
        {'seed_list': [1.7]},
        {'seed_list': [1, 2.5]},
        {'seed_list': [True]},
        {'n_examples': 500.5},
        {'train.epochs': 2.5},
        {'seed_list': '1.7'},
    ])
    def test_non_integral_values_rejected(self, values):
        with pytest.raises(InvalidConfigError):
            config_from_mapping(values)

    def test_non_integral_seed_rejected_in_code(self):
        with pytest.raises(InvalidConfigError):
            ExperimentConfig(seed_list=(1.7,))

    def test_integral_floats_accepted(self):
        cfg = config_from_mapping({'seed_list': [3.0, 4], 'n_examples': 600.0})
        assert cfg.seed_list == (3, 4)
        assert cfg.n_examples == 600

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(StorageError):
            load_config(tmp_path / "missing.cfg")


class TestData:
    def test_derive_seed_is_stable_and_tag_dependent(self):
        assert derive_seed(1, 'data') == derive_seed(1, 'data')
        assert derive_seed(1, 'data') != derive_seed(1, 'split')
        assert derive_seed(1, 'data') != derive_seed(2, 'data')
        assert 0 <= derive_seed(1, 'train') < 2 ** 64

    def test_generate_is_deterministic(self):
        cfg = _small_config()
        first, second = generate(cfg, 11), generate(cfg, 11)
        assert np.array_equal(first.features, second.features)
        assert np.array_equal(first.labels, second.labels)
        assert not np.array_equal(first.labels, generate(cfg, 12).labels)

    def test_homoscedastic_sigma_is_constant(self):
        data = generate(_small_config(noise_profile='homoscedastic'), 1)
        assert np.all(data.true_sigma == data.true_sigma[0])

    def test_heteroscedastic_sigma_range(self):
        data = generate(_small_config(n_examples=2000), 1)
        assert data.true_sigma.min() > 0.3
        assert data.true_sigma.max() < 2.0
        assert np.allclose(data.labels, data.true_mean + data.label_noise)

    def test_imbalanced_class_frequencies(self):
        data = generate(ExperimentConfig(noise_profile='imbalanced-va', n_examples=54781), 3)
        counts = np.bincount(data.va_labels, minlength=11)
        expected = np.asarray(config.VA_CLASS_COUNTS) / sum(config.VA_CLASS_COUNTS)
        assert counts[10] / len(data) == pytest.approx(21568 / 54781, abs=0.01)
        assert np.allclose(counts / len(data), expected, atol=0.01)

    def test_split_sizes(self):
        assert split_sizes(10, (0.6, 0.2, 0.2)) == (6, 2, 2)
        with pytest.raises(InvalidConfigError):
            split_sizes(3, (0.6, 0.2, 0.2))

    def test_split_is_a_partition(self):
        data = generate(_small_config(), 4)
        train, val, test = split(data, (0.6, 0.2, 0.2), 4)
        assert (len(train), len(val), len(test)) == (180, 60, 60)
        indices = np.concatenate([train.indices, val.indices, test.indices])
        assert np.array_equal(np.sort(indices), np.arange(len(data)))

    def test_split_is_seeded(self):
        data = generate(_small_config(), 4)
        first = split(data, (0.6, 0.2, 0.2), 9)
        second = split(data, (0.6, 0.2, 0.2), 9)
        other = split(data, (0.6, 0.2, 0.2), 10)
        assert all(np.array_equal(a.indices, b.indices) for a, b in zip(first, second))
        assert not np.array_equal(first[0].indices, other[0].indices)

    def test_zero_shift_is_identity(self):
        data = generate(_small_config(), 1)
        assert apply_shift(data, 0.0) is data

    def test_shift_scales_label_noise(self):
        data = generate(_small_config(), 1)
        shifted = apply_shift(data, 2.0)
        assert np.allclose(shifted.label_noise, 3.0 * data.label_noise)
        assert np.allclose(shifted.labels - shifted.true_mean, 3.0 * (data.labels - data.true_mean))
        assert np.array_equal(shifted.true_mean, data.true_mean)

    def test_shift_scales_feature_noise_for_va_profile(self):
        data = generate(ExperimentConfig(noise_profile='imbalanced-va', n_examples=500), 1)
        shifted = apply_shift(data, 1.0)
        assert np.array_equal(shifted.labels, data.labels)
        assert np.allclose(shifted.features - data.features, data.feature_noise)

    def test_negative_shift(self):
        with pytest.raises(InvalidConfigError):
            apply_shift(generate(_small_config(), 1), -0.1)


class TestTrial:
    def test_epsilon_sweep_rows(self):
        rows = run_trial(_small_config(), 1)
        assert len(rows) == 6
        assert sorted({(r['epsilon'], r['method']) for r in rows}) == sorted(
            (e, m) for e in (0.2, 0.3, 0.4) for m in (PAC, VCP)
        )
        frame = rows_frame(rows)
        assert list(frame.columns) == ROW_COLUMNS
        assert (frame['n_cal'] == 60).all()
        assert (frame['n_test'] == 60).all()

    def test_constant_vs_adaptive_widths(self):
        rows = run_trial(_small_config(), 2)
        for row in rows:
            if row['method'] == VCP:
                assert row['width_std'] == 0.0
            elif row['feasible']:
                assert row['width_std'] > 0.0

    def test_infeasible_pac_row(self):
        cfg = _small_config(n_examples=50, delta=1e-5, epsilon_list=(0.05,), predictor='oracle')
        rows = run_trial(cfg, 1)
        pac = next(r for r in rows if r['method'] == PAC)
        assert pac['feasible'] is False
        assert math.isnan(pac['scale'])
        assert pac['k_required'] is None
        assert math.isnan(pac['coverage'])

    def test_oracle_trial_uses_true_sigma(self):
        cfg = _small_config(predictor='oracle', n_examples=2000)
        output = evaluate_trial(cfg, 1)
        pac = next(r for r in output.rows if r['method'] == PAC and r['epsilon'] == 0.3)
        assert 0.9 < pac['scale'] < 1.4
        assert 60.0 < pac['coverage'] < 85.0
        assert output.class_rows

    def test_failure_carries_seed(self):
        cfg = _small_config(n_examples=3)
        with pytest.raises(TrialError) as info:
            evaluate_trial(cfg, 4)
        assert info.value.seed == 4

    def test_trial_is_deterministic(self):
        cfg = _small_config()
        assert rows_frame(run_trial(cfg, 3)).equals(rows_frame(run_trial(cfg, 3)))


class TestSuite:
    def test_writes_report_files(self, tmp_path):
        report = run_suite(_small_config(), tmp_path)
        assert len(report.rows) == 30
        assert report.complete
        assert (tmp_path / config.ROWS_FILE).exists()
        assert (tmp_path / config.CLASSES_FILE).exists()

        aggregates = json.loads((tmp_path / config.AGGREGATES_FILE).read_text())
        assert aggregates['status'] == 'complete'
        assert aggregates['provenance']['seeds'] == [1, 2, 3, 4, 5]
        assert len(aggregates['groups']) == 6
        assert all(group['trials'] == 5 for group in aggregates['groups'])

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg = _small_config()
        run_suite(cfg, tmp_path / "a")
        run_suite(cfg, tmp_path / "b", parallel=3)
        for name in (config.ROWS_FILE, config.CLASSES_FILE, config.AGGREGATES_FILE):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_failed_trial_marks_report_partial(self, tmp_path, monkeypatch):
        import src.experiments.suite as suite

        real = suite.evaluate_trial

        def flaky(cfg, seed):
            if seed == 2:
                raise TrialError("boom", seed=seed)
            return real(cfg, seed)

        monkeypatch.setattr(suite, 'evaluate_trial', flaky)
        report = run_suite(_small_config(), tmp_path)
        assert not report.complete
        assert len(report.rows) == 24
        aggregates = json.loads((tmp_path / config.AGGREGATES_FILE).read_text())
        assert aggregates['status'] == 'partial'
        assert aggregates['errors'] == [{'seed': 2, 'error': 'boom'}]

    def test_progress_callback(self, tmp_path):
        seen = []
        run_suite(_small_config(seed_list=(1, 2)), tmp_path, progress_callback=seen.append)
        assert [p['trials_done'] for p in seen] == [1, 2]
        assert all(p['trials_total'] == 2 for p in seen)

    def test_rows_csv_column_order(self, tmp_path):
        run_suite(_small_config(seed_list=(1,)), tmp_path)
        assert list(pd.read_csv(tmp_path / config.ROWS_FILE).columns) == ROW_COLUMNS
