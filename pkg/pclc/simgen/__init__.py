#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Generate synthetic post-crash lane-change scenarios with ground truth.
"""

from pclc.simgen._errors import GenerationError
from pclc.simgen._config import ScenarioConfig
from pclc.simgen._idm import idm_acceleration, ballistic_step, smoothstep
from pclc.simgen._truth import ScenarioTruth, GeneratedScenario
from pclc.simgen._scenario import generate_scenario, generate_dataset
from pclc.simgen._near_miss import near_miss_scene
from pclc.simgen._io import write_scenario, read_scenario, list_scene_files

__all__ = (
    'GenerationError',
    'ScenarioConfig',
    'ScenarioTruth',
    'GeneratedScenario',
    'generate_scenario',
    'generate_dataset',
    'near_miss_scene',
    'write_scenario',
    'read_scenario',
    'list_scene_files',
    'idm_acceleration',
    'ballistic_step',
    'smoothstep',
)
