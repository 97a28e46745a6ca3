#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test the scenario generator and its ground truth.
"""

import math
import numpy as np
import pytest
from pydantic import ValidationError

from pclc.core import Role
from pclc.analytics import (
    label_yielding, count_rejected_gaps, gap_events, final_gap_index, overlap_batch,
)
from pclc.simgen import (
    ScenarioConfig, GenerationError, generate_scenario, generate_dataset, near_miss_scene,
    write_scenario, read_scenario, idm_acceleration, ballistic_step, smoothstep,
)
from tests import debug
from tests.scenes import generated, generated_batch


def test_config_defaults_come_from_config():
    from pclc.config import get_config
    cfg = ScenarioConfig()
    assert cfg.p_yield == get_config('simgen', 'p_yield')
    assert cfg.idm.min_gap == get_config('simgen', 'idm', 'min_gap')


def test_config_partial_section_override():
    cfg = ScenarioConfig(idm={'desired_speed': 15.0})
    assert cfg.idm.desired_speed == 15.0
    assert cfg.idm.max_accel == ScenarioConfig().idm.max_accel


@pytest.mark.parametrize(
    'overrides',
    [
        {'p_yield': 1.5},
        {'p_yield': -0.1},
        {'dt': 0.0},
        {'dt': 1.0},
        {'lane_width': -3.5},
        {'headway': {'mean_s': 1.0, 'min_s': 2.0}},
        {'vehicle': {'length_min': 5.0, 'length_max': 4.0}},
        {'not_a_field': 1},
    ]
)
def test_config_validation(overrides):
    with pytest.raises(ValidationError):
        ScenarioConfig(**overrides)


def test_same_seed_is_bitwise_identical():
    a = generate_scenario(ScenarioConfig(seed=11), debug=debug)
    b = generate_scenario(ScenarioConfig(seed=11))
    assert a.scene.states.tobytes() == b.scene.states.tobytes()
    assert np.array_equal(a.truth.labels, b.truth.labels)
    assert a.truth.to_dict() == b.truth.to_dict()


def test_different_seeds_differ():
    assert generated(0).scene != generated(1).scene


def test_keyword_overrides():
    scenario = generate_scenario(seed=4, p_yield=1.0)
    assert scenario.config.seed == 4
    assert scenario.event_id == 'scene-000004'


@pytest.mark.parametrize('seed', range(5))
def test_generated_scene_is_physical(seed):
    scenario = generated(seed)
    scene = scenario.scene
    success, msg = scene.validate()
    assert success, msg
    assert np.all(scene.states[:, Role.CRASHED, 2] == 0.0)
    assert scene.states[-1, Role.LANE_CHANGER, 1] == pytest.approx(scene.lane_width)
    s = scene.states
    dx = np.diff(s[:, :, 0], axis=0)
    expected = s[:-1, :, 2] * scene.dt + 0.5 * s[:-1, :, 3] * scene.dt ** 2
    ### Steps that end in a stop move less than the constant-acceleration formula.
    assert np.all(np.abs(dx - expected) <= 0.5 * 6.0 * scene.dt ** 2 + 1e-9)


@pytest.mark.parametrize('seed', range(5))
def test_no_footprint_overlap(seed):
    scene = generated(seed).scene
    heading = scene.headings()
    boxes = np.concatenate([scene.states[:, :, :2], heading[..., None], scene.states[:, :, 5:7]], axis=-1)
    iu, ju = np.triu_indices(scene.n_vehicles, 1)
    assert not overlap_batch(boxes[:, iu], boxes[:, ju]).any()


def test_all_yield_means_no_rejected_gaps():
    for seed in range(5):
        scenario = generated(seed, p_yield=1.0)
        assert scenario.truth.rejected_gaps == 0
        assert scenario.truth.final_gap_index == 0
        assert np.all(scenario.truth.labels == 1)
        assert scenario.non_yield_proportion() == 0.0


@pytest.mark.parametrize('seed', range(10))
def test_truth_matches_reconstruction(seed):
    scenario = generated(seed)
    scene, truth = scenario.scene, scenario.truth
    events = gap_events(scene)
    assert [e.to_dict() for e in events] == [g.to_dict() for g in truth.gaps]
    assert final_gap_index(scene, events) == truth.final_gap_index
    assert np.array_equal(label_yielding(scene, truth.final_gap_index), truth.labels)
    assert count_rejected_gaps(scene, events) == truth.rejected_gaps


def test_labels_flip_at_final_gap():
    scenario = next(s for s in generated_batch(30) if s.truth.rejected_gaps >= 2)
    truth = scenario.truth
    flip = int(round(truth.gaps[truth.final_gap_index].t_available / scenario.scene.dt))
    assert np.all(truth.labels[:flip] == 0)
    assert np.all(truth.labels[flip:] == 1)


def test_first_gap_lag_decides_rejection():
    for scenario in generated_batch(20):
        first_lag = scenario.truth.gaps[0].lag
        assert (scenario.truth.rejected_gaps == 0) == scenario.truth.yield_flags[first_lag]


def test_maneuver_times():
    truth = generated(0).truth
    assert 0.0 < truth.lc_start < truth.lc_end
    assert truth.lc_start == pytest.approx(truth.gaps[0].t_available)


def test_dataset_seeds_and_single_call():
    batch = generate_dataset(ScenarioConfig(seed=7), n=3, debug=debug)
    assert [s.event_id for s in batch] == ['scene-000007', 'scene-000008', 'scene-000009']
    assert batch[0].scene == generate_scenario(ScenarioConfig(seed=7)).scene


def test_dataset_size_checked():
    with pytest.raises(ValueError):
        generate_dataset(ScenarioConfig(), n=0)


def test_unreachable_merge_raises():
    with pytest.raises(GenerationError):
        generate_scenario(ScenarioConfig(max_horizon_s=0.5, max_retries=1))


def test_scenario_files_roundtrip(tmp_path):
    scenario = generated(2)
    path = write_scenario(scenario, tmp_path)
    assert path.name == 'scene-000002.csv'
    assert (tmp_path / 'scene-000002.truth.json').exists()
    assert (tmp_path / 'scene-000002.scene.json').exists()
    back = read_scenario(path)
    assert back.scene == scenario.scene
    assert back.truth.to_dict() == scenario.truth.to_dict()


def test_missing_truth_file(tmp_path):
    path = generated(2).scene.to_csv(tmp_path / 'lonely.csv')
    with pytest.raises(FileNotFoundError):
        read_scenario(path)


def test_near_miss_expected_ttc():
    scene, expected = near_miss_scene(speed=5.0, final_gap=2.0)
    assert expected == pytest.approx(0.4)
    success, msg = scene.validate()
    assert success, msg


@pytest.mark.parametrize(
    'v,v_lead,gap,expected',
    [
        (12.0, 12.0, math.inf, 0.0),
        (0.0, 0.0, 2.0, 0.0),
        (0.0, 0.0, math.inf, 1.5),
    ]
)
def test_idm_reference_points(v, v_lead, gap, expected):
    acc = idm_acceleration(
        v, v_lead, gap,
        desired_speed=12.0, max_accel=1.5, comfortable_decel=2.0,
        min_gap=2.0, time_headway=1.2, delta=4.0,
    )
    assert float(acc) == pytest.approx(expected, abs=1e-12)


def test_ballistic_exact_stop():
    x, v, a = ballistic_step(np.array([0.0]), np.array([1.0]), np.array([-5.0]), 0.5)
    assert v[0] == 0.0
    assert x[0] == pytest.approx(0.1)
    assert a[0] == pytest.approx(-2.0)


@pytest.mark.parametrize('u,expected', [(-1.0, 0.0), (0.0, 0.0), (0.5, 0.5), (1.0, 1.0), (2.0, 1.0)])
def test_smoothstep(u, expected):
    assert smoothstep(u) == expected


@pytest.mark.slow
def test_rejected_gap_share_matches_yield_probability():
    batch = generate_dataset(ScenarioConfig(seed=1000, p_yield=0.3), n=500)
    share = np.mean([s.truth.rejected_gaps >= 1 for s in batch])
    assert abs(share - 0.7) <= 0.05


@pytest.mark.slow
def test_mean_rejected_gaps_matches_geometric_model():
    batch = generate_dataset(ScenarioConfig(seed=2000, p_yield=0.2), n=100)
    mean = np.mean([s.truth.rejected_gaps for s in batch])
    assert abs(mean - 4.0) <= 0.15 * 4.0


@pytest.mark.slow
def test_non_yield_time_grows_as_yielding_drops():
    proportions = [
        np.mean([s.non_yield_proportion() for s in generate_dataset(ScenarioConfig(seed=3000, p_yield=p), n=40)])
        for p in (0.9, 0.5, 0.2)
    ]
    assert proportions[0] < proportions[1] < proportions[2]


@pytest.mark.slow
def test_truth_matches_reconstruction_on_mixed_dataset():
    batch = [
        scenario
        for seed, p_yield, n in ((4000, 0.2, 167), (5000, 0.5, 167), (6000, 0.8, 166))
        for scenario in generate_dataset(ScenarioConfig(seed=seed, p_yield=p_yield), n=n)
    ]
    assert len(batch) == 500
    mismatches = []
    for scenario in batch:
        scene, truth = scenario.scene, scenario.truth
        events = gap_events(scene)
        agrees = (
            [e.to_dict() for e in events] == [g.to_dict() for g in truth.gaps]
            and final_gap_index(scene, events) == truth.final_gap_index
            and np.array_equal(label_yielding(scene, truth.final_gap_index), truth.labels)
            and count_rejected_gaps(scene, events) == truth.rejected_gaps
        )
        if not agrees:
            mismatches.append(scenario.event_id)
    assert mismatches == []
