#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test displacement metrics, sampling, baselines, crash checks, and reports.
"""

import math
import numpy as np
import pytest

from pclc.core import Role, build_windows, fit_stats, normalize
from pclc.core._roles import X_LON, Y_LAT, LENGTH, WIDTH
from pclc.model import build_model, Checkpoint, save_checkpoint, load_checkpoint
from pclc.evaluation import (
    ade, fde, displacement_errors, horizon_steps, sample_trajectories, true_future,
    evaluate_stochastic, constant_velocity, constant_velocity_samples, recurrent_seq2seq,
    crash_flags, false_crash_rate, ttc_bucket_counts, ttc_deviation,
    EvalReport, evaluate, read_report, compare_reports,
    ExperimentConfig, AblationResult, summarize_runs, run_ablation,
)
from pclc.numerics import ShapeError
from tests import debug
from tests.scenes import straight_scene

SMALL_MODEL = {
    't_obs': 3,
    't_pre': 30,
    'd_h': 6,
    'd_z': 3,
    'heads': 2,
    'd_head': 3,
    'mlp_hidden': 8,
    'd_q': 5,
    'd_e': 4,
    'd_trans': 8,
    'trans_layers': 1,
    'trans_heads': 2,
    'd_pos': 3,
}


def _windows():
    scene = straight_scene(n_steps=100)
    return build_windows(scene, t_obs=3, t_pre=30, step_s=0.5, labels=np.zeros(scene.n_steps))


def _checkpoint(variant: str = 'CVAE_T', seed: int = 0) -> Checkpoint:
    windows = _windows()
    return Checkpoint(model=build_model(variant, SMALL_MODEL, seed=seed), stats=fit_stats(windows))


def _truth(windows) -> np.ndarray:
    return np.stack([true_future(w) for w in windows])


@pytest.mark.parametrize(
    'Y_hat,Y,expected_ade,expected_fde',
    [
        ([[0.0, 0.0], [3.0, 4.0]], [[0.0, 0.0], [0.0, 0.0]], 2.5, 5.0),
        ([[1.0, 1.0], [2.0, 2.0]], [[1.0, 1.0], [2.0, 2.0]], 0.0, 0.0),
        ([[0.0, 2.0]], [[0.0, 0.0]], 2.0, 2.0),
    ]
)
def test_ade_fde_examples(Y_hat, Y, expected_ade, expected_fde):
    assert ade(Y_hat, Y) == expected_ade
    assert fde(Y_hat, Y) == expected_fde


def test_ade_fde_match_brute_force():
    rng = np.random.default_rng(0)
    Y_hat = rng.standard_normal((3, 4, 7, 2))
    Y = rng.standard_normal((3, 4, 7, 2))
    ades, fdes = ade(Y_hat, Y), fde(Y_hat, Y)
    for s in range(3):
        for n in range(4):
            errors = [math.hypot(*(Y_hat[s, n, t] - Y[s, n, t])) for t in range(7)]
            assert abs(ades[s, n] - sum(errors) / 7) < 1e-12
            assert abs(fdes[s, n] - errors[-1]) < 1e-12


def test_displacement_errors_shape_check():
    with pytest.raises(ShapeError):
        displacement_errors(np.zeros((4, 2)), np.zeros((5, 2)))
    with pytest.raises(ShapeError):
        displacement_errors(np.zeros((4, 3)), np.zeros((4, 3)))


def test_horizon_steps_skips_out_of_range():
    assert horizon_steps([1.0, 2.0, 10.0, 0.01], 0.1, 50) == [(1.0, 10), (2.0, 20)]


def test_stochastic_mean_bounds_min():
    ckpt = _checkpoint('CIT')
    windows = _windows()
    samples = sample_trajectories(ckpt, windows, k=6, seed=0, debug=debug)
    assert samples.shape == (6, len(windows), 30, 2)
    per_sample = ade(samples, np.broadcast_to(_truth(windows), samples.shape))
    assert np.all(per_sample.mean(axis=0) >= per_sample.min(axis=0))
    assert np.any(per_sample.std(axis=0) > 0.0)


def test_deterministic_variant_repeats_prediction():
    samples = sample_trajectories(_checkpoint('TRANSFORMER'), _windows(), k=4, seed=0)
    assert np.all(samples.var(axis=0) == 0.0)


def test_sampling_is_seeded_and_batch_independent():
    ckpt, windows = _checkpoint('CVAE_T'), _windows()
    a = sample_trajectories(ckpt, windows, k=3, seed=5)
    b = sample_trajectories(ckpt, windows, k=3, seed=5, batch_size=1)
    c = sample_trajectories(ckpt, windows, k=3, seed=6)
    assert np.allclose(a, b, atol=1e-9)
    assert not np.allclose(a, c)
    ### Window `i` keeps its noise when other windows are dropped.
    d = sample_trajectories(ckpt, windows[:2], k=3, seed=5)
    assert np.allclose(a[:, :2], d, atol=1e-9)


def test_evaluate_stochastic_single_window():
    ckpt, window = _checkpoint('CIT'), _windows()[0]
    mean_ade, mean_fde, samples = evaluate_stochastic(ckpt, window, k=4, seed=1)
    assert samples.shape == (4, 30, 2)
    truth = np.broadcast_to(true_future(window), samples.shape)
    assert abs(mean_ade - float(np.mean(ade(samples, truth)))) < 1e-12
    assert mean_fde >= 0.0


def test_constant_velocity_exact_on_straight_motion():
    windows = _windows()
    for w in windows:
        assert np.allclose(constant_velocity(w), true_future(w), atol=1e-9)


def test_constant_velocity_of_normalized_windows():
    windows = _windows()
    normalized, stats = normalize(windows)
    raw = constant_velocity_samples(windows, k=2)
    assert raw.shape == (2, len(windows), 30, 2)
    assert np.allclose(constant_velocity_samples(normalized, k=2, stats=stats), raw, atol=1e-9)
    with pytest.raises(ValueError):
        constant_velocity(normalized[0])


def test_truth_never_crashes():
    windows = _windows()
    samples = _truth(windows)[None]
    assert not np.any(crash_flags(samples, windows))
    assert false_crash_rate(None, windows, samples=samples) == 0.0


def test_teleported_prediction_always_crashes():
    windows = _windows()
    leader = np.stack([w.future[:, int(Role.NEW_LEADER)][:, [X_LON, Y_LAT]] for w in windows])
    samples = np.concatenate([_truth(windows)[None], leader[None]], axis=0)
    assert np.all(crash_flags(samples, windows))
    assert false_crash_rate(None, windows, samples=samples) == 1.0


def _corners(x, y, heading, length, width):
    u = np.array([math.cos(heading), math.sin(heading)])
    v = np.array([-math.sin(heading), math.cos(heading)])
    c = np.array([x, y])
    return [c + su * length / 2 * u + sv * width / 2 * v for su in (-1, 1) for sv in (-1, 1)]


def _overlap_oracle(a, b) -> bool:
    ca, cb = _corners(*a), _corners(*b)
    for heading in (a[2], b[2]):
        for axis in (np.array([math.cos(heading), math.sin(heading)]), np.array([-math.sin(heading), math.cos(heading)])):
            pa = [float(axis @ p) for p in ca]
            pb = [float(axis @ p) for p in cb]
            if max(pa) <= min(pb) or max(pb) <= min(pa):
                return False
    return True


def _boxes_oracle(positions, length, width, dt):
    vx = np.gradient(positions[:, 0], dt)
    vy = np.gradient(positions[:, 1], dt)
    heading = np.arctan2(vy, np.maximum(vx, 1.0))
    return [(positions[t, 0], positions[t, 1], heading[t], length, width) for t in range(positions.shape[0])]


def test_crash_flags_match_independent_recount():
    windows = _windows()
    rng = np.random.default_rng(3)
    truth = _truth(windows)
    samples = np.repeat(truth[None], 3, axis=0)
    samples[..., 1] += rng.uniform(0.0, 3.5, size=(3, len(windows)))[..., None]
    flags = crash_flags(samples, windows, shrink=1.0, heading_window=1)

    expected = []
    for i, w in enumerate(windows):
        hit = False
        lc = w.future[0, int(Role.LANE_CHANGER)]
        for traj in samples[:, i]:
            pred = _boxes_oracle(traj, lc[LENGTH], lc[WIDTH], w.dt)
            for r in (Role.CRASHED, Role.NEW_LEADER, Role.NEW_FOLLOWER, Role.FOLLOWER_AFTER_NF):
                f = w.future[:, int(r)]
                other = _boxes_oracle(f[:, [X_LON, Y_LAT]], f[0, LENGTH], f[0, WIDTH], w.dt)
                if any(_overlap_oracle(p, o) for p, o in zip(pred, other)):
                    hit = True
        expected.append(hit)
    assert flags.tolist() == expected
    assert 0 < sum(expected) < len(windows)


def test_shrinking_footprints_never_adds_crashes():
    windows = _windows()
    rng = np.random.default_rng(4)
    samples = np.repeat(_truth(windows)[None], 2, axis=0)
    samples[..., 1] += rng.uniform(0.0, 3.5, size=(2, len(windows)))[..., None]
    rates = [false_crash_rate(None, windows, samples=samples, shrink=s) for s in (0.5, 0.8, 1.0)]
    assert rates == sorted(rates)


def test_ttc_bucket_counts():
    counts = ttc_bucket_counts([0.2, 0.7, math.inf, 2.5, 3.0], [0.5, 1.0, 1.5, 2.0, 3.0])
    assert counts == {'<0.5': 1, '0.5-1': 1, '1-1.5': 0, '1.5-2': 0, '2-3': 1, '>=3': 2}


def test_ttc_deviation_is_zero_for_truth():
    windows = _windows()
    table = ttc_deviation(None, windows, horizons=[1.0, 3.0], predictions=_truth(windows))
    assert set(table) == {1.0, 3.0}
    assert all(v == 0 for row in table.values() for v in row.values())


def test_ttc_deviation_counts_each_event_once():
    from pclc.evaluation._safety import event_minima, min_ttc_trajectory
    windows = []
    for event_id, n_steps, lc_speed in (('long', 120, 3.0), ('short', 50, 5.0)):
        scene = straight_scene(n_steps=n_steps, lc_speed=lc_speed, event_id=event_id)
        windows += build_windows(scene, t_obs=3, t_pre=30, step_s=0.5, labels=np.zeros(scene.n_steps))
    assert len(windows) > 2
    predictions = _truth(windows)
    predictions[..., 0] += np.linspace(0.0, 4.0, 30)

    edges = [0.5, 1.0, 1.5, 2.0, 3.0]
    table = ttc_deviation(None, windows, horizons=[3.0], edges=edges, predictions=predictions)
    steps = 30
    true_mins, pred_mins = {}, {}
    for w, p in zip(windows, predictions):
        true_ttc = min_ttc_trajectory(w, true_future(w), steps)
        pred_ttc = min_ttc_trajectory(w, p, steps)
        true_mins[w.event_id] = min(true_mins.get(w.event_id, math.inf), true_ttc)
        pred_mins[w.event_id] = min(pred_mins.get(w.event_id, math.inf), pred_ttc)
    true_counts = ttc_bucket_counts(list(true_mins.values()), edges)
    pred_counts = ttc_bucket_counts(list(pred_mins.values()), edges)
    assert table[3.0] == {b: abs(true_counts[b] - pred_counts[b]) for b in true_counts}
    assert sum(true_counts.values()) == 2
    assert all(v <= 2 for v in table[3.0].values())
    assert event_minima(windows[:2] + windows[-1:], [3.0, 1.0, 2.0]) == [1.0, 2.0]


def test_recurrent_seq2seq_checks_variant():
    windows = _windows()
    assert recurrent_seq2seq(_checkpoint('SEQ2SEQ'), windows).shape == (len(windows), 30, 2)
    with pytest.raises(ValueError):
        recurrent_seq2seq(_checkpoint('CIT'), windows)


def test_checkpoint_roundtrip_evaluation_is_bitwise(tmp_path):
    ckpt, windows = _checkpoint('CIT', seed=2), _windows()
    before = sample_trajectories(ckpt, windows, k=2, seed=0)
    save_checkpoint(ckpt, tmp_path)
    after = sample_trajectories(load_checkpoint(tmp_path), windows, k=2, seed=0)
    assert np.array_equal(before, after)


def test_evaluate_report(tmp_path):
    windows = _windows()
    report = evaluate(_checkpoint('CIT'), windows, k=3, horizons=[1.0, 3.0], seed=0, debug=debug)
    assert report.variant == 'CIT'
    assert 'CIT' in report.header()
    assert report.horizons == [1.0, 3.0]
    assert report.row(3.0)['steps'] == 30
    assert len(report.per_sample_ade) == len(windows)
    cv = report.baselines['constant_velocity']
    assert all(row['ade'] < 1e-9 for row in cv)
    assert set(report.ttc_deviation) == {'1', '3'}

    paths = report.write(tmp_path)
    assert all(p.exists() for p in paths)
    loaded = read_report(tmp_path)
    assert loaded.to_dict() == report.to_dict()


def test_report_validation():
    with pytest.raises(ValueError):
        EvalReport('CIT', 1, 0, 1, metrics=[{'horizon': 1.0, 'steps': 10, 'ade': -1.0, 'fde': 0.0, 'false_crash_rate': 0.0}])
    with pytest.raises(ValueError):
        EvalReport('CIT', 1, 0, 1, metrics=[{'horizon': 1.0, 'steps': 10, 'ade': 1.0, 'fde': 0.0, 'false_crash_rate': 1.5}])


def test_compare_reports_improvement():
    def _report(variant, ade_value):
        return EvalReport(variant, 1, 0, 1, metrics=[
            {'horizon': 5.0, 'steps': 50, 'ade': ade_value, 'fde': 2 * ade_value, 'false_crash_rate': 0.0},
        ])
    table = compare_reports([_report('CVAE_T', 2.0), _report('CIT', 1.5)])
    assert table['label'].tolist() == ['CVAE_T', 'CIT']
    assert table['improvement'].tolist() == [0.0, 0.25]
    with pytest.raises(ValueError):
        compare_reports([])


def _run_report(variant, seed, ade3, ade5, crash5, cv=None):
    def _rows(a3, a5, c5):
        return [
            {'horizon': 3.0, 'steps': 30, 'ade': a3, 'fde': 2 * a3, 'false_crash_rate': 0.0},
            {'horizon': 5.0, 'steps': 50, 'ade': a5, 'fde': 2 * a5, 'false_crash_rate': c5},
        ]
    baselines = {'constant_velocity': _rows(*cv)} if cv is not None else {}
    return EvalReport(variant, 2, seed, 10, metrics=_rows(ade3, ade5, crash5), baselines=baselines)


def _ablation_reports():
    return {
        ('CVAE_T', 0): _run_report('CVAE_T', 0, 2.0, 4.0, 0.2, cv=(1.5, 5.0, 0.5)),
        ('CIT', 0): _run_report('CIT', 0, 1.0, 3.0, 0.1, cv=(1.5, 5.0, 0.5)),
        ('CVAE_T', 1): _run_report('CVAE_T', 1, 2.0, 4.0, 0.4, cv=(1.5, 5.0, 0.5)),
        ('CIT', 1): _run_report('CIT', 1, 2.2, 3.0, 0.1, cv=(1.5, 5.0, 0.5)),
    }


def test_summarize_runs_averages_over_seeds():
    summary = summarize_runs(_ablation_reports(), ['CVAE_T', 'CIT'])
    assert summary['label'].tolist() == ['CVAE_T'] * 2 + ['CIT'] * 2 + ['constant_velocity'] * 2
    assert summary['horizon'].tolist() == [3.0, 5.0] * 3
    assert summary['seeds'].tolist() == [2] * 6
    cit5 = summary[(summary['label'] == 'CIT') & (summary['horizon'] == 5.0)].iloc[0]
    assert cit5['ade'] == 3.0
    assert cit5['improvement'] == pytest.approx(0.25)
    assert cit5['false_crash_rate'] == pytest.approx(0.1)
    cvae5 = summary[(summary['label'] == 'CVAE_T') & (summary['horizon'] == 5.0)].iloc[0]
    assert cvae5['false_crash_rate'] == pytest.approx(0.3)
    assert cvae5['improvement'] == 0.0


def test_directional_checks(tmp_path):
    import json
    reports = _ablation_reports()
    config = ExperimentConfig(seeds=[0, 1])
    result = AblationResult(config=config, reports=reports, summary=summarize_runs(reports, ['CVAE_T', 'CIT']))
    checks = result.directional_checks()
    assert checks == {
        'ade_5s_cit_vs_cvae_t': True,
        'ade_3s_cit_vs_constant_velocity': False,
        'ade_5s_cit_vs_constant_velocity': True,
        'false_crash_5s_cit_vs_cvae_t': True,
    }
    assert result.mean('CIT', 3.0) == pytest.approx(1.6)
    with pytest.raises(KeyError):
        result.mean('CIT', 4.0)

    paths = result.write(tmp_path)
    assert all(p.exists() for p in paths)
    assert json.loads((tmp_path / 'ablation.json').read_text())['checks'] == checks
    assert read_report(tmp_path / 'CIT_seed1').row(3.0)['ade'] == 2.2


def test_directional_checks_skip_missing_horizons():
    reports = {('CIT', 0): _run_report('CIT', 0, 1.0, 3.0, 0.1)}
    summary = summarize_runs(reports, ['CIT'])
    result = AblationResult(config=ExperimentConfig(variants=['cit'], seeds=[0]), reports=reports, summary=summary)
    assert result.config.variants[0].value == 'CIT'
    assert result.directional_checks() == {}


def test_experiment_config():
    from pydantic import ValidationError
    config = ExperimentConfig(train_scenes=4, test_scenes=3, p_yields=[0.2, 0.8], scenario_seed=50)
    train_cfgs, test_cfgs = config.scenario_configs()
    assert [c.seed for c in train_cfgs] == [50, 51, 52, 53]
    assert [c.seed for c in test_cfgs] == [54, 55, 56]
    assert [c.p_yield for c in train_cfgs + test_cfgs] == [0.2, 0.8, 0.2, 0.8, 0.2, 0.8, 0.2]
    assert config.train_config('CVAE_T', 2).seed == 2
    assert config.train_config('CVAE_T', 2).t_pre == config.t_pre
    with pytest.raises(ValidationError):
        ExperimentConfig(p_yields=[1.5])
    with pytest.raises(ValidationError):
        ExperimentConfig(train={'seed': 3})
    with pytest.raises(ValidationError):
        ExperimentConfig(seeds=[])


def _tiny_experiment(**kw) -> ExperimentConfig:
    model = {k: v for k, v in SMALL_MODEL.items() if k not in ('t_obs', 't_pre')}
    cf = {
        'train_scenes': 3,
        'test_scenes': 2,
        'seeds': [0, 1],
        't_obs': 3,
        't_pre': 10,
        'step_s': 2.0,
        'k': 2,
        'horizons': [0.5, 1.0],
        'train': {'epochs': 1, 'batch_size': 16, 'model': model},
    }
    cf.update(kw)
    return ExperimentConfig(**cf)


@pytest.mark.slow
def test_run_ablation_small():
    result = run_ablation(_tiny_experiment(), debug=debug)
    assert set(result.reports) == {('CVAE_T', 0), ('CIT', 0), ('CVAE_T', 1), ('CIT', 1)}
    assert len({r.n_windows for r in result.reports.values()}) == 1
    assert set(result.summary['label']) == {'CVAE_T', 'CIT', 'constant_velocity'}
    cit = result.summary[result.summary['label'] == 'CIT']
    expected = np.mean([result.reports[('CIT', s)].row(1.0)['ade'] for s in (0, 1)])
    assert cit[cit['horizon'] == 1.0]['ade'].iloc[0] == pytest.approx(expected)
    assert result.directional_checks() == {}


@pytest.mark.slow
def test_cit_beats_ablation_and_constant_velocity():
    """
    Default training on 700 scenes, evaluated on 300 held-out scenes with mixed
    yield probabilities, averaged over three seeds.
    """
    config = ExperimentConfig()
    assert config.test_scenes >= 300
    assert len(set(config.p_yields)) > 1
    assert len(config.seeds) == 3
    result = run_ablation(config)
    checks = result.directional_checks()
    assert set(checks) == {
        'ade_5s_cit_vs_cvae_t',
        'ade_3s_cit_vs_constant_velocity',
        'ade_5s_cit_vs_constant_velocity',
        'false_crash_5s_cit_vs_cvae_t',
    }
    assert all(checks.values()), result.summary.to_string()
