#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The trajectory data model: roles, scenes, windows, normalization, and splits.
"""

from pclc.core._errors import GridError, SceneFormatError
from pclc.core._roles import (
    Role,
    VehicleState,
    STATE_COLUMNS,
    FEATURE_COLUMNS,
    N_ROLES,
)
from pclc.core.Scene import Scene
from pclc.core._window import Window, build_windows, window_count
from pclc.core._normalize import NormStats, fit_stats, normalize, denormalize, denormalize_trajectory
from pclc.core._split import DatasetSplit, split_windows, split_event_ids
from pclc.core._windows_io import save_split, load_split
from pclc.core._kinematics import velocity_components, heading_from_velocity, steer_from_heading


def extract_features(scene: Scene, role, t: float):
    """Return `[y_lat, x_lon, v, a, steer]` of `role` at grid time `t`."""
    return scene.extract_features(role, t)

