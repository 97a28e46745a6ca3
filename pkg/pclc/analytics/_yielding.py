#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Kinematic reading of yielding: does the lag vehicle of an available gap close it?
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import Optional


def identify_yielding_kinematic(
        scene,
        accel_threshold: Optional[float] = None,
        closing_rate_threshold: Optional[float] = None,
        debug: bool = False,
    ) -> np.ndarray:
    """
    Label each step yielding (1) or non-yielding (0) from the lag vehicles' motion.

    At a step where a gap is available, its lag vehicle is non-yielding if it
    accelerates harder than `accel_threshold` (m/s^2), or if it closes the lag gap
    to the lane changer faster than `closing_rate_threshold` (m/s) without braking
    harder than `accel_threshold`. Steps without an available gap are labeled
    yielding.

    These labels describe behavior only; training uses `label_yielding`.
    """
    from pclc.config import get_config
    from pclc.core._roles import Role, X_LON, A, LENGTH
    from pclc.analytics._gaps import gap_events
    cf = get_config('analytics', 'kinematic_yield')
    if accel_threshold is None:
        accel_threshold = cf['accel_threshold']
    if closing_rate_threshold is None:
        closing_rate_threshold = cf['closing_rate_threshold']

    lc = int(Role.LANE_CHANGER)
    x = scene.states[:, :, X_LON]
    length = scene.states[:, :, LENGTH]
    lc_rear = x[:, lc] - length[:, lc] / 2.0
    labels = np.ones(scene.n_steps, dtype=np.int64)
    for event in gap_events(scene):
        first = int(round(event.t_available / scene.dt))
        stop = (
            int(round(event.t_closed / scene.dt))
            if event.t_closed is not None
            else scene.n_steps
        )
        steps = slice(first, stop)
        lag_gap = lc_rear - (x[:, event.lag] + length[:, event.lag] / 2.0)
        closing = -np.gradient(lag_gap, scene.dt) if scene.n_steps > 1 else np.zeros(scene.n_steps)
        accel = scene.states[steps, event.lag, A]
        pushing = (
            (accel > accel_threshold)
            | ((closing[steps] > closing_rate_threshold) & (accel > -accel_threshold))
        )
        labels[steps] = np.where(pushing, 0, labels[steps])
        if debug:
            from pclc.utils.debug import dprint
            dprint(f"Gap {event.index}: {int(np.count_nonzero(pushing))} non-yielding steps.")
    return labels
