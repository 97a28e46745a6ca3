#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test argument parsing, action dispatch, and the full command-line pipeline.
"""

import json
import pytest

from pclc.__main__ import main
from pclc._internal.arguments import parse_arguments, parse_line
from pclc._internal.entry import entry
from pclc._internal.manifest import ExperimentManifest, format_compatible
from pclc.actions import actions

SMALL_MODEL = {
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


def _run(sysargs):
    """Run `main()` and return its exit code."""
    with pytest.raises(SystemExit) as exc:
        main(sysargs)
    return exc.value.code


def test_actions_registered():
    for name in ('simgen', 'windows', 'analyze', 'train', 'evaluate', 'predict', 'report', 'experiment', 'show'):
        assert name in actions


def test_parse_arguments_types():
    args = parse_arguments([
        'windows', '--in', 'scenes', '--t-obs', '4', '--t-pre', '8',
        '--step', '0.5', '--split', '0.6', '--horizons', '1,2.5', '--debug',
    ])
    assert args['action'] == ['windows']
    assert args['input'] == 'scenes'
    assert (args['t_obs'], args['t_pre']) == (4, 8)
    assert args['step_s'] == 0.5
    assert args['split'] == 0.6
    assert args['horizons'] == [1.0, 2.5]
    assert args['debug'] is True
    assert 'nopretty' not in args


def test_parse_alias_and_sub_actions():
    assert parse_arguments(['eval', '--ckpt', 'c'])['action'] == ['evaluate']
    assert parse_line('show config train')['action'] == ['show', 'config', 'train']
    assert parse_line('report --eval a b --out c')['eval_dirs'] == ['a', 'b']


@pytest.mark.parametrize(
    'sysargs',
    [
        ['simgen', '--bogus'],
        ['simgen', '--n', 'three'],
    ]
)
def test_parse_arguments_rejects(sysargs):
    with pytest.raises(ValueError):
        parse_arguments(sysargs)


def test_entry_failures():
    success, msg = entry('frobnicate')
    assert not success and 'frobnicate' in msg
    success, msg = entry([])
    assert not success
    success, msg = entry('simgen --n 2')
    assert not success and '--out' in msg
    success, _ = entry('simgen --bogus')
    assert not success


def test_main_exit_codes(capsys):
    assert _run(['show', 'version', '--nopretty']) == 0
    assert _run(['frobnicate', '--nopretty']) == 1
    assert 'frobnicate' in capsys.readouterr().err


def test_show_config_section(capsys):
    assert _run(['show', 'config', 'evaluation', '--nopretty']) == 0
    shown = json.loads(capsys.readouterr().out)
    assert shown['k'] == 20
    assert shown['horizons'] == [1.0, 2.0, 3.0, 4.0, 5.0]


def test_version_flag(capsys):
    from pclc import __version__
    assert _run(['--version', '--nopretty']) == 0
    assert capsys.readouterr().out.strip() == __version__


@pytest.mark.parametrize(
    'found,expected,compatible',
    [
        ('1.0.0', '1.2.0', True),
        ('1.9.3', '1.0.0', True),
        ('2.0.0', '1.0.0', False),
        ('not a version', '1.0.0', False),
    ]
)
def test_format_compatible(found, expected, compatible):
    assert format_compatible(found, expected) is compatible


def test_simgen_manifest_is_reproducible(tmp_path):
    hashes = []
    for name in ('a', 'b'):
        out = tmp_path / name
        assert _run(['simgen', '--n', '2', '--seed', '3', '--out', str(out), '--nopretty']) == 0
        doc = json.loads((out / 'manifest.json').read_text())
        assert doc['command'] == 'simgen'
        assert len([p for p in out.glob('*.csv')]) == 2
        assert all(not k.startswith('/') for k in doc['outputs'].values())
        hashes.append(doc['hash'])
    assert hashes[0] == hashes[1]

    other = tmp_path / 'c'
    assert _run(['simgen', '--n', '2', '--seed', '4', '--out', str(other), '--nopretty']) == 0
    assert json.loads((other / 'manifest.json').read_text())['hash'] != hashes[0]


@pytest.mark.slow
def test_full_pipeline(tmp_path, capsys):
    from pclc.core import load_split
    from pclc.evaluation import read_report
    from pclc.utils.packages import import_pandas
    pd = import_pandas()

    cf_path = tmp_path / 'config.json'
    cf_path.write_text(json.dumps({
        'windows': {'t_obs': 3, 't_pre': 10, 'step_s': 2.0, 'split': 0.5, 'seed': 0},
        'train': {
            'variant': 'CIT',
            'epochs': 1,
            'batch_size': 16,
            't_obs': 3,
            't_pre': 10,
            'model': SMALL_MODEL,
        },
    }))
    scenes, ds, ckpt = tmp_path / 'scenes', tmp_path / 'ds', tmp_path / 'ckpt'
    ev, cmp_dir, pred = tmp_path / 'eval', tmp_path / 'cmp', tmp_path / 'pred.csv'

    assert _run(['simgen', '--n', '4', '--seed', '0', '--out', str(scenes), '--nopretty']) == 0
    assert _run(['analyze', '--in', str(scenes), '--out', str(tmp_path / 'analysis'), '--nopretty']) == 0
    assert (tmp_path / 'analysis' / 'events.csv').exists()

    assert _run(['windows', '--in', str(scenes), '--config', str(cf_path), '--out', str(ds), '--nopretty']) == 0
    split = load_split(ds)
    assert split.train and split.test
    assert not {w.event_id for w in split.train} & {w.event_id for w in split.test}

    assert _run(['train', '--config', str(cf_path), '--data', str(ds), '--out', str(ckpt), '--nopretty']) == 0
    assert (ckpt / 'checkpoint.json').exists()
    assert len(pd.read_csv(ckpt / 'train_log.csv')) > 0

    capsys.readouterr()
    assert _run([
        'eval', '--ckpt', str(ckpt), '--data', str(ds), '--k', '2',
        '--horizons', '0.5,1', '--out', str(ev), '--nopretty',
    ]) == 0
    assert 'CIT' in capsys.readouterr().out
    report = read_report(ev)
    assert report.horizons == [0.5, 1.0]
    assert report.k == 2

    window_path = split.test[0].to_json(tmp_path / 'window.json')
    assert _run([
        'predict', '--ckpt', str(ckpt), '--window', str(window_path),
        '--k', '3', '--out', str(pred), '--nopretty',
    ]) == 0
    frame = pd.read_csv(pred)
    assert list(frame.columns) == ['sample', 'step', 't', 'x', 'y']
    assert len(frame) == 3 * 10
    assert (tmp_path / 'pred.manifest.json').exists()

    assert _run(['report', '--eval', str(ev), str(ev), '--out', str(cmp_dir), '--nopretty']) == 0
    table = pd.read_csv(cmp_dir / 'comparison.csv')
    assert table['improvement'].tolist() == [0.0, 0.0, 0.0, 0.0]

    manifest = ExperimentManifest.read(ckpt / 'manifest.json')
    assert manifest.command == 'train'
    assert 'checkpoint' in manifest.outputs


def test_missing_inputs_fail_cleanly(tmp_path):
    success, msg = entry(['windows', '--in', str(tmp_path), '--out', str(tmp_path / 'ds')])
    assert not success
    success, msg = entry(['eval', '--ckpt', str(tmp_path / 'nope'), '--data', str(tmp_path), '--out', str(tmp_path / 'e')])
    assert not success


def test_show_packages(capsys):
    assert _run(['show', 'packages', 'required', '--nopretty']) == 0
    lines = capsys.readouterr().out.split()
    assert any(line.startswith('numpy') for line in lines)
    assert any(line.startswith('pydantic') for line in lines)
    assert _run(['show', 'packages', 'nonsense', '--nopretty']) == 1


@pytest.mark.slow
def test_experiment_action(tmp_path):
    from pclc.evaluation import read_report
    from pclc.utils.packages import import_pandas
    pd = import_pandas()
    cf_path = tmp_path / 'experiment.json'
    cf_path.write_text(json.dumps({
        'experiment': {
            'train_scenes': 3,
            'seeds': [0],
            't_obs': 3,
            't_pre': 10,
            'step_s': 2.0,
            'train': {'batch_size': 16, 'model': SMALL_MODEL},
        },
    }))
    out = tmp_path / 'ablation'
    assert _run([
        'experiment', '--config', str(cf_path), '--n', '2', '--seed', '7', '--epochs', '1',
        '--k', '2', '--horizons', '0.5,1', '--out', str(out), '--nopretty',
    ]) == 0
    summary = pd.read_csv(out / 'ablation.csv')
    assert set(summary['label']) == {'CVAE_T', 'CIT', 'constant_velocity'}
    doc = json.loads((out / 'ablation.json').read_text())
    assert doc['config']['test_scenes'] == 2
    assert doc['config']['scenario_seed'] == 7
    assert doc['config']['train']['epochs'] == 1
    assert doc['checks'] == {}
    assert read_report(out / 'CIT_seed0').k == 2
    manifest = ExperimentManifest.read(out / 'manifest.json')
    assert manifest.command == 'experiment'
    assert 'ablation.csv' in manifest.outputs


def test_experiment_requires_out():
    success, msg = entry('experiment --n 2')
    assert not success and '--out' in msg
