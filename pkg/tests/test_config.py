#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test the layered configuration: defaults, user files, and environment patches.
"""

import json
import pytest

import pclc.config as config_module
from pclc.config import get_config, read_config_file, write_config_file
from pclc.config._patch import apply_patch_to_config
from pclc.config.static import STATIC_CONFIG
from pclc.utils.misc import string_to_dict


@pytest.fixture
def fresh_config(tmp_path, monkeypatch):
    """Point the config root at an empty directory and reload around the test."""
    monkeypatch.setenv(STATIC_CONFIG['environment']['root'], str(tmp_path))
    monkeypatch.delenv(STATIC_CONFIG['environment']['config'], raising=False)
    config_module._config(reload=True)
    yield tmp_path
    monkeypatch.undo()
    config_module._config(reload=True)


@pytest.mark.parametrize(
    'keys,expected',
    [
        (('windows', 't_obs'), 10),
        (('windows', 't_pre'), 50),
        (('evaluation', 'k'), 20),
        (('evaluation', 'horizons'), [1.0, 2.0, 3.0, 4.0, 5.0]),
        (('train', 'variant'), 'CIT'),
    ]
)
def test_defaults(fresh_config, keys, expected):
    assert get_config(*keys) == expected


def test_invalid_keys_warn(fresh_config):
    with pytest.warns(UserWarning):
        assert get_config('does', 'not', 'exist') is None
    assert get_config('does', 'not', 'exist', warn=False) is None


def test_get_config_returns_copies(fresh_config):
    horizons = get_config('evaluation', 'horizons')
    horizons.append(99.0)
    assert 99.0 not in get_config('evaluation', 'horizons')


def test_user_file_patches_defaults(fresh_config):
    (fresh_config / 'pclc.json').write_text(json.dumps({'windows': {'t_obs': 7}}))
    config_module._config(reload=True)
    assert get_config('windows', 't_obs') == 7
    assert get_config('windows', 't_pre') == 50


def test_yaml_user_file(fresh_config):
    (fresh_config / 'pclc.yaml').write_text("evaluation:\n  k: 3\n")
    config_module._config(reload=True)
    assert get_config('evaluation', 'k') == 3


def test_environment_patch_wins(fresh_config, monkeypatch):
    (fresh_config / 'pclc.json').write_text(json.dumps({'evaluation': {'k': 7}}))
    monkeypatch.setenv(STATIC_CONFIG['environment']['config'], '{"evaluation": {"k": 5}}')
    config_module._config(reload=True)
    assert get_config('evaluation', 'k') == 5


def test_environment_simple_format(fresh_config, monkeypatch):
    monkeypatch.setenv(STATIC_CONFIG['environment']['config'], 'train:epochs:3')
    config_module._config(reload=True)
    assert get_config('train', 'epochs') == 3


def test_missing_section_falls_back_to_defaults(fresh_config):
    config_module.set_config({'windows': {'t_obs': 4}})
    assert get_config('windows', 't_obs') == 4
    assert get_config('evaluation', 'k') == 20


def test_set_config_rejects_non_dicts():
    with pytest.raises(TypeError):
        config_module.set_config(['not', 'a', 'dict'])


def test_apply_patch_is_deep():
    base = {'a': {'b': 1, 'c': 2}, 'd': 3}
    out = apply_patch_to_config(base, {'a': {'b': 10}})
    assert out == {'a': {'b': 10, 'c': 2}, 'd': 3}
    assert base['a']['b'] == 1


def test_string_to_dict():
    assert string_to_dict('a:1,b:c:2') == {'a': 1, 'b': {'c': 2}}
    assert string_to_dict('') == {}


def test_config_file_roundtrip(tmp_path):
    data = {'train': {'epochs': 4, 'variant': 'CVAE_T'}}
    for name in ('cf.json', 'cf.yaml'):
        path = write_config_file(data, tmp_path / name)
        assert read_config_file(path) == data


def test_read_config_file_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_config_file(tmp_path / 'missing.json')
    path = tmp_path / 'list.json'
    path.write_text('[1, 2]')
    with pytest.raises(ValueError):
        read_config_file(path)
    empty = tmp_path / 'empty.json'
    empty.write_text('')
    assert read_config_file(empty) == {}
