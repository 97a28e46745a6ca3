#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Build a hand-made scene with a known minimum time-to-collision.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import Tuple


def near_miss_scene(
        speed: float = 5.0,
        final_gap: float = 2.0,
        duration: float = 5.0,
        dt: float = 0.1,
        lane_width: float = 3.5,
        length: float = 4.5,
        width: float = 1.8,
    ) -> Tuple['pclc.core.Scene', float]:
    """
    The lane changer drives straight at the stationary crashed vehicle at `speed`
    and ends `final_gap` meters (bumper to bumper) behind it. The target-lane
    vehicles move in parallel at the same speed and never come close.

    Returns
    -------
    A tuple `(scene, expected_min_ttc)` where `expected_min_ttc = final_gap / speed`.

    Examples
    --------
    >>> scene, expected = near_miss_scene(speed=5.0, final_gap=2.0)
    >>> expected
    0.4
    """
    from pclc.core import Scene
    from pclc.core._roles import N_ROLES, STATE_COLUMNS
    from pclc.utils.warnings import error
    if speed <= 0.0 or final_gap <= 0.0:
        error(f"speed and final_gap must be positive, got {speed} and {final_gap}.", ValueError)

    L = int(round(duration / dt)) + 1
    t = np.arange(L) * dt
    crash_x = 100.0
    lc_end = crash_x - length - final_gap
    lc_x = lc_end - speed * (t[-1] - t)

    states = np.zeros((L, N_ROLES, len(STATE_COLUMNS)))
    states[:, :, 5] = length
    states[:, :, 6] = width
    states[:, 0, 0] = lc_x
    states[:, 0, 2] = speed
    states[:, 1, 0] = crash_x
    ### New leader ahead of the lane changer, new follower and the one after it behind.
    for role, offset in ((2, 15.0), (3, -15.0), (4, -30.0)):
        states[:, role, 0] = lc_x + offset
        states[:, role, 1] = lane_width
        states[:, role, 2] = speed
    scene = Scene(states, dt=dt, lane_width=lane_width, event_id='near-miss')
    return scene, final_gap / speed
