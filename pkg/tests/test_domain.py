#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test scenes, feature extraction, windows, normalization and splits.
"""

import json
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pclc.core import (
    Scene, Role, VehicleState, Window, GridError, SceneFormatError,
    build_windows, window_count, normalize, denormalize, fit_stats,
    split_windows, split_event_ids, save_split, load_split, extract_features,
)
from tests import debug
from tests.scenes import straight_scene, generated


def _windows(scene, **kw):
    return build_windows(scene, labels=np.ones(scene.n_steps), debug=debug, **kw)


def test_feature_order():
    scene = straight_scene()
    features = extract_features(scene, Role.LANE_CHANGER, 1.0)
    assert features.tolist() == [0.0, 23.0, 3.0, 0.0, 0.0]


@pytest.mark.parametrize('t', [0.0, 0.5, 3.3, 9.9])
def test_crashed_vehicle_is_stationary(t):
    assert extract_features(straight_scene(), Role.CRASHED, t)[2] == 0.0


@pytest.mark.parametrize('t', [0.05, -0.1, 10.0, 123.4])
def test_off_grid_time(t):
    with pytest.raises(GridError):
        straight_scene().extract_features(Role.LANE_CHANGER, t)


def test_generated_initial_state():
    scenario = generated(0)
    cfg = scenario.config
    features = scenario.scene.extract_features(Role.LANE_CHANGER, 0.0)
    assert features[0] == 0.0
    assert features[2] == cfg.lc_initial_speed
    crash = scenario.scene.state(Role.CRASHED, 0.0)
    assert crash.x_lon == cfg.crash_position
    lc_front = features[1] + scenario.scene.states[0, Role.LANE_CHANGER, 5] / 2
    assert crash.x_lon - crash.length / 2 - lc_front == pytest.approx(cfg.lc_initial_gap, abs=1e-9)


def test_vehicle_state_validation():
    with pytest.raises(ValueError):
        VehicleState(0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 4.5, 1.8)
    with pytest.raises(ValueError):
        VehicleState(0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.8)


def test_scene_shape_checked():
    with pytest.raises(SceneFormatError):
        Scene(np.zeros((10, 4, 7)))


def test_scene_is_read_only():
    scene = straight_scene()
    with pytest.raises(ValueError):
        scene.states[0, 0, 0] = 1.0


def test_scene_validates():
    success, msg = straight_scene().validate()
    assert success, msg
    success, msg = generated(0).scene.validate()
    assert success, msg


def test_scene_csv_roundtrip(tmp_path):
    scene = generated(1).scene
    path = scene.to_csv(tmp_path / f"{scene.event_id}.csv")
    header = path.read_text().splitlines()[0]
    assert header == 't,role,x_lon,y_lat,v,a,steer,length,width'
    assert Scene.read_csv(path) == scene


@pytest.mark.parametrize(
    'n_steps,t_obs,t_pre,step_s,expected',
    [
        (100, 10, 50, 0.5, 9),
        (60, 10, 50, 0.5, 1),
        (59, 10, 50, 0.5, 0),
        (60, 10, 10, 0.1, 41),
    ]
)
def test_window_count_examples(n_steps, t_obs, t_pre, step_s, expected):
    windows = _windows(straight_scene(n_steps), t_obs=t_obs, t_pre=t_pre, step_s=step_s)
    assert len(windows) == expected
    assert [w.start for w in windows] == [i * round(step_s / 0.1) for i in range(expected)]


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=1, max_value=500),
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=1, max_value=60),
    st.integers(min_value=1, max_value=10),
)
def test_window_count_formula(n_steps, t_obs, t_pre, step):
    expected = (n_steps - t_obs - t_pre) // step + 1 if n_steps >= t_obs + t_pre else 0
    assert window_count(n_steps, t_obs, t_pre, step) == expected


def test_window_step_must_be_multiple_of_dt():
    with pytest.raises(ValueError):
        _windows(straight_scene(), step_s=0.25)


def test_window_alignment():
    scene = straight_scene(80)
    labels = (np.arange(80) >= 30).astype(float)
    w = build_windows(scene, t_obs=10, t_pre=20, step_s=1.0, labels=labels)[1]
    assert w.X.shape == (10, 5, 5)
    assert w.Y.shape == (20, 2)
    assert w.B.shape == (20,)
    assert np.array_equal(w.X[:, 0, 1], scene.states[10:20, 0, 0])
    assert np.array_equal(w.Y[:, 0], scene.states[20:40, 0, 0])
    assert w.B.tolist() == labels[20:40].tolist()


def test_window_json_keeps_feature_order(tmp_path):
    w = _windows(straight_scene())[0]
    path = w.to_json(tmp_path / 'w.json')
    assert Window.read_json(path).X.tolist() == w.X.tolist()


def test_generated_window_labels_are_binary_and_monotone():
    for w in build_windows(generated(2).scene):
        assert set(np.unique(w.B)) <= {0.0, 1.0}
        assert np.all(np.diff(w.B) >= 0)


def test_normalize_roundtrip():
    windows = build_windows(generated(0).scene) + build_windows(generated(1).scene)
    normed, stats = normalize(windows)
    back = denormalize(normed, stats)
    for a, b in zip(windows, back):
        assert np.allclose(a.X, b.X, atol=1e-9, rtol=0)
        assert np.allclose(a.Y, b.Y, atol=1e-9, rtol=0)


def test_normalized_moments():
    windows = build_windows(generated(3).scene)
    normed, _ = normalize(windows)
    X = np.stack([w.X for w in normed]).reshape(-1, 5)
    assert np.allclose(X.mean(axis=0), 0.0, atol=1e-6)
    assert np.allclose(X.std(axis=0), 1.0, atol=1e-6)


def test_constant_feature_clamped():
    windows = _windows(straight_scene())
    with pytest.warns(UserWarning):
        normed, stats = normalize(windows)
    ### Nobody accelerates or steers in a straight scene.
    X = np.stack([w.X for w in normed])
    assert np.all(X[..., 3] == 0.0)
    assert np.all(X[..., 4] == 0.0)
    assert stats.x_std[3] == pytest.approx(1e-3)


def test_fit_stats_rejects_empty():
    with pytest.raises(ValueError):
        fit_stats([])


def test_event_level_split():
    windows = []
    for i in range(10):
        windows += _windows(straight_scene(event_id=f"event-{i}"))
    split = split_windows(windows, fraction=0.7, seed=3)
    assert set(split.train_events).isdisjoint(split.test_events)
    assert len(split.train_events) == 7
    assert len(split.train) + len(split.test) == len(windows)
    assert split_windows(windows, fraction=0.7, seed=3).train_events == split.train_events


@pytest.mark.parametrize('fraction', [0.0, 1.0, -0.5, 1.5])
def test_split_fraction_bounds(fraction):
    with pytest.raises(ValueError):
        split_event_ids(['a', 'b'], fraction=fraction)


def test_two_events_keep_both_sides():
    train, test = split_event_ids(['a', 'b'], fraction=0.9)
    assert len(train) == 1 and len(test) == 1


def test_save_and_load_split(tmp_path):
    windows = []
    for i in range(4):
        windows += _windows(straight_scene(event_id=f"event-{i}"))
    split = split_windows(windows, fraction=0.5, seed=1)
    paths = save_split(split, tmp_path)
    manifest = json.loads(paths['manifest'].read_text())
    assert manifest['seed'] == 1
    loaded = load_split(tmp_path)
    assert loaded.train_events == split.train_events
    for a, b in zip(loaded.test, split.test):
        assert np.array_equal(a.X, b.X)
        assert np.array_equal(a.Y, b.Y)
        assert np.array_equal(a.B, b.B)
