#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Check the physical invariants of a scene.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import SuccessTuple
from pclc.core._roles import Role, X_LON, Y_LAT, V, LENGTH, WIDTH


def validate(self, tolerance: float = 1e-6, max_accel: float = 6.0) -> SuccessTuple:
    """
    Verify speeds, dimensions, lateral bounds, and position continuity.

    A per-step displacement may not exceed `v * dt + 0.5 * max_accel * dt**2 + tolerance`
    (plus the lateral displacement, which is bounded separately by the road width).

    Returns
    -------
    A `SuccessTuple` naming the first violated invariant.
    """
    s = self.states
    if np.any(s[:, :, V] < -tolerance):
        return False, f"Negative speed in {self}."
    if np.any(s[:, :, LENGTH] <= 0) or np.any(s[:, :, WIDTH] <= 0):
        return False, f"Non-positive vehicle dimensions in {self}."
    if np.any(np.abs(s[:, int(Role.CRASHED), V]) > 0):
        return False, f"The crashed vehicle moves in {self}."
    road_half = self.lane_width * (len(self.lane_centers) + 0.5)
    if np.any(np.abs(s[:, :, Y_LAT]) > road_half):
        return False, f"Lateral position outside the road in {self}."
    if self.n_steps > 1:
        dx = np.abs(np.diff(s[:, :, X_LON], axis=0))
        bound = s[:-1, :, V] * self.dt + 0.5 * max_accel * self.dt ** 2 + tolerance
        bad = np.argwhere(dx > bound)
        if bad.size:
            k, i = bad[0]
            return False, f"Discontinuous position for vehicle {i} at step {k} in {self}."
    return True, "Success"
