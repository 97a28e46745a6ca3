#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Synthesize post-crash lane-change scenarios, measure the behavior in them, and
train and evaluate interaction-aware trajectory predictors.

Licensed under the Apache License, Version 2.0.
"""

from pclc.config import __version__, get_config
from pclc.core import Scene, Window, Role, build_windows, normalize, DatasetSplit
from pclc.simgen import ScenarioConfig, generate_scenario, generate_dataset
from pclc.analytics import summarize, ttc_2d, label_yielding, detect_lc_boundaries
from pclc.model import TrajectoryModel, build_model, Checkpoint, load_checkpoint
from pclc.trainer import TrainConfig, train
from pclc.evaluation import evaluate, compare_reports

__all__ = (
    'Scene',
    'Window',
    'Role',
    'build_windows',
    'normalize',
    'DatasetSplit',
    'ScenarioConfig',
    'generate_scenario',
    'generate_dataset',
    'summarize',
    'ttc_2d',
    'label_yielding',
    'detect_lc_boundaries',
    'TrajectoryModel',
    'build_model',
    'Checkpoint',
    'load_checkpoint',
    'TrainConfig',
    'train',
    'evaluate',
    'compare_reports',
    'get_config',
    '__version__',
)
