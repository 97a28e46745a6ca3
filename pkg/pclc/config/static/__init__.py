#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Insert non-user-editable configuration here.
"""

__all__ = ['STATIC_CONFIG']

STATIC_CONFIG = {
    'environment': {
        'config': 'PCLC_CONFIG',
        'root': 'PCLC_ROOT',
        'threads': 'PCLC_THREADS',
        'prefix': 'PCLC_',
    },
    'config': {
        'default_filetype': 'json',
        'file_names': ('pclc.json', 'pclc.yaml', 'pclc.yml'),
    },
    'formats': {
        'scene': '1.0.0',
        'windows': '1.1.0',
        'checkpoint': '1.2.0',
        'eval': '1.1.0',
        'manifest': '1.0.0',
    },
    'files': {
        'manifest': 'manifest.json',
        'truth_suffix': '.truth.json',
        'scene_meta_suffix': '.scene.json',
        'windows': 'windows.json',
        'windows_payload': 'windows.f64',
        'checkpoint': 'checkpoint.json',
        'params_dir': 'params',
        'param_suffix': '.f64',
        'train_log': 'train_log.csv',
        'eval_report': 'eval_report.json',
        'eval_metrics': 'metrics.csv',
        'eval_ttc': 'ttc_deviation.csv',
        'eval_samples': 'per_sample_ade.csv',
        'summary_events': 'events.csv',
        'summary_aggregate': 'summary.json',
        'comparison': 'comparison.csv',
        'ablation_summary': 'ablation.csv',
        'ablation_checks': 'ablation.json',
    },
    'system': {
        'success': {
            'ignore': (
                'Success',
                'success',
                'Succeeded',
                '',
                None,
            ),
        },
        'action_aliases': {
            'eval': 'evaluate',
        },
    },
    'setup': {
        'name': 'pclc',
        'formal_name': 'Post-Crash Lane-Change Lab',
        'description': 'Synthesize, analyze, and predict post-crash lane changes',
        'author': 'pclc developers',
        'license': 'Apache Software License 2.0',
    },
}


def _static_config():
    """
    Alias function for the global `STATIC_CONFIG` dictionary.
    """
    return STATIC_CONFIG
