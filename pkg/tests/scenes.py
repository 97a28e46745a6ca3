#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Build the scenes shared by the test modules.
"""

import functools
import numpy as np
from pclc.core import Scene, Role, N_ROLES, STATE_COLUMNS
from pclc.simgen import ScenarioConfig, generate_scenario, generate_dataset


def straight_scene(
        n_steps: int = 100,
        dt: float = 0.1,
        lc_speed: float = 3.0,
        stream_speed: float = 8.0,
        event_id: str = 'straight',
        n_extra: int = 0,
    ) -> Scene:
    """
    Constant-speed vehicles: the lane changer stays in its lane behind the
    crashed vehicle while the target lane drives by.
    """
    t = np.arange(n_steps) * dt
    V = N_ROLES + n_extra
    states = np.zeros((n_steps, V, len(STATE_COLUMNS)))
    states[:, :, 5] = 4.5
    states[:, :, 6] = 1.8
    states[:, Role.LANE_CHANGER, 0] = 20.0 + lc_speed * t
    states[:, Role.LANE_CHANGER, 2] = lc_speed
    states[:, Role.CRASHED, 0] = 20.0 + lc_speed * t[-1] + 20.0
    offsets = {Role.NEW_LEADER: 10.0, Role.NEW_FOLLOWER: -10.0, Role.FOLLOWER_AFTER_NF: -25.0}
    for i, extra in enumerate(range(N_ROLES, V)):
        offsets[extra] = 25.0 + 15.0 * i
    for role, offset in offsets.items():
        states[:, role, 0] = 20.0 + offset + stream_speed * t
        states[:, role, 1] = 3.5
        states[:, role, 2] = stream_speed
    return Scene(states, dt=dt, event_id=event_id)


@functools.lru_cache(maxsize=None)
def generated(seed: int = 0, p_yield: float = 0.5):
    """A cached generated scenario."""
    return generate_scenario(ScenarioConfig(seed=seed, p_yield=p_yield))


@functools.lru_cache(maxsize=None)
def generated_batch(n: int, seed: int = 0, p_yield: float = 0.5):
    return tuple(generate_dataset(ScenarioConfig(seed=seed, p_yield=p_yield), n=n))
