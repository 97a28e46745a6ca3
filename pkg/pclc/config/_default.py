#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The default configuration values to write to the config files.
"""

from pclc.config._formatting import default_formatting_config

default_system_config = {
    'threads': None,
}

default_simgen_config = {
    'seed': 0,
    'dt': 0.1,
    'lane_width': 3.5,
    'crash_position': 60.0,
    'lc_initial_gap': 15.0,
    'lc_initial_speed': 3.0,
    'headway': {
        'mean_s': 2.0,
        'min_s': 1.2,
        'min_spawn_gap': 9.0,
    },
    'stream_speed': {
        'mean': 7.0,
        'std': 1.0,
        'min': 5.0,
    },
    'first_vehicle_offset': 8.0,
    'p_yield': 0.5,
    'idm': {
        'desired_speed': 12.0,
        'max_accel': 1.5,
        'comfortable_decel': 2.0,
        'min_gap': 2.0,
        'time_headway': 1.2,
        'delta': 4.0,
        'max_decel': 6.0,
    },
    'non_yield': {
        'speed_boost': 2.0,
        'headway_factor': 0.5,
        'extra_accel': 0.5,
    },
    'yield_lookahead': 25.0,
    'gap_acceptance': {
        'lead_min': 3.0,
        'lag_min': 1.5,
    },
    'lane_changer': {
        'standstill_gap': 6.0,
        'merge_gap': 1.0,
    },
    'lc_duration': 4.0,
    'probe_duration': 2.0,
    'probe_fraction': 0.2,
    'heading_speed_floor': 1.0,
    'post_merge_s': 3.0,
    'max_horizon_s': 150.0,
    'max_retries': 5,
    'n_target_vehicles': 45,
    'vehicle': {
        'length_min': 4.2,
        'length_max': 4.9,
        'width_min': 1.7,
        'width_max': 1.9,
    },
}

default_analytics_config = {
    'wavelet': {
        ### `fine` departs from the 0.5 to 4 s grid (kept as `coarse`); see `wavelet_scales`.
        'preset': 'fine',
        'presets': {
            'fine': {'min_scale': 0.15, 'max_scale': 0.4, 'count': 6},
            'coarse': {'min_scale': 0.5, 'max_scale': 4.0, 'count': 8},
        },
        'threshold': 0.1,
        'energy_floor': 1.0e-8,
        'support': 8.0,
    },
    'gaps': {
        'lead_margin': 0.5,
        'lag_margin': 0.5,
    },
    'ttc': {
        'horizon_s': 20.0,
        'thresholds': [1.0, 2.0, 3.0],
    },
    'kinematic_yield': {
        'accel_threshold': 0.3,
        'closing_rate_threshold': 0.5,
    },
}

default_model_config = {
    'd_h': 64,
    'd_z': 16,
    'heads': 4,
    'd_head': 16,
    'mlp_hidden': 64,
    'd_q': 64,
    'd_e': 32,
    'd_trans': 64,
    'trans_layers': 2,
    'trans_heads': 4,
    'd_pos': 16,
    'logvar_min': -30.0,
    'logvar_max': 20.0,
    'literal_aggregation': False,
}

default_train_config = {
    'variant': 'CIT',
    'epochs': 50,
    'batch_size': 32,
    'learning_rate': 1.0e-3,
    'beta1': 0.9,
    'beta2': 0.999,
    'adam_eps': 1.0e-8,
    'weights': None,
    'clip_norm': 5.0,
    'seed': 0,
    't_obs': 10,
    't_pre': 50,
    'val_fraction': 0.1,
    'verbose': False,
}

default_evaluation_config = {
    'k': 20,
    'horizons': [1.0, 2.0, 3.0, 4.0, 5.0],
    'ttc_bucket_edges': [0.5, 1.0, 1.5, 2.0, 3.0],
    'heading_window': 3,
    'shrink': 1.0,
    'seed': 0,
}

default_windows_config = {
    't_obs': 10,
    't_pre': 50,
    'step_s': 0.5,
    'split': 0.7,
    'seed': 0,
    'variance_floor': 1.0e-6,
}

default_experiment_config = {
    'train_scenes': 700,
    'test_scenes': 300,
    'p_yields': [0.2, 0.5, 0.8],
    'variants': ['CVAE_T', 'CIT'],
    'seeds': [0, 1, 2],
    'scenario_seed': 100000,
    'k': None,
    'horizons': None,
    'train': {},
}

default_config = {
    'formatting': default_formatting_config,
    'system': default_system_config,
    'simgen': default_simgen_config,
    'analytics': default_analytics_config,
    'model': default_model_config,
    'train': default_train_config,
    'evaluation': default_evaluation_config,
    'windows': default_windows_config,
    'experiment': default_experiment_config,
}
