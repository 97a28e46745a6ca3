#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Write and read generated scenarios (scene CSV, geometry sidecar and ground truth).
"""

from __future__ import annotations
import json
import pathlib
from pclc.utils.typing import List, PathLike
from pclc.simgen._truth import GeneratedScenario, ScenarioTruth


def _truth_path(csv_path: pathlib.Path) -> pathlib.Path:
    from pclc.config.static import STATIC_CONFIG
    return csv_path.parent / (csv_path.stem + STATIC_CONFIG['files']['truth_suffix'])


def write_scenario(scenario: GeneratedScenario, directory: PathLike) -> pathlib.Path:
    """
    Write `<event_id>.csv`, `<event_id>.scene.json` and `<event_id>.truth.json`
    into `directory`.

    Returns
    -------
    The path of the scene CSV.
    """
    directory = pathlib.Path(directory)
    csv_path = scenario.scene.to_csv(directory / f"{scenario.event_id}.csv")
    with open(_truth_path(csv_path), 'w', encoding='utf-8') as f:
        json.dump(scenario.truth.to_dict(), f, indent=2, sort_keys=True)
    return csv_path


def read_scenario(csv_path: PathLike) -> GeneratedScenario:
    """
    Read a scenario written by `write_scenario`.

    Raises
    ------
    `FileNotFoundError` if the ground-truth file is missing.
    """
    from pclc.core import Scene
    from pclc.utils.warnings import error
    csv_path = pathlib.Path(csv_path)
    truth_path = _truth_path(csv_path)
    if not truth_path.exists():
        error(f"Missing ground truth '{truth_path}' for scene '{csv_path}'.", FileNotFoundError)
    scene = Scene.read_csv(csv_path)
    with open(truth_path, 'r', encoding='utf-8') as f:
        truth = ScenarioTruth.from_dict(json.load(f))
    return GeneratedScenario(scene=scene, truth=truth)


def list_scene_files(directory: PathLike) -> List[pathlib.Path]:
    """Scene CSVs in `directory`, sorted by name."""
    return sorted(pathlib.Path(directory).glob('*.csv'))
