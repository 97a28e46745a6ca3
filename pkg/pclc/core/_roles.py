#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Vehicle roles and per-step vehicle state.
"""

from __future__ import annotations
import enum
from dataclasses import dataclass

### Column layout of `Scene.states[..., :]`.
STATE_COLUMNS = ('x_lon', 'y_lat', 'v', 'a', 'steer', 'length', 'width')
X_LON, Y_LAT, V, A, STEER, LENGTH, WIDTH = range(len(STATE_COLUMNS))

### Per-vehicle model features, in order.
FEATURE_COLUMNS = ('y_lat', 'x_lon', 'v', 'a', 'steer')
FEATURE_INDICES = (Y_LAT, X_LON, V, A, STEER)

N_ROLES = 5


class Role(enum.IntEnum):
    """The five vehicles of a post-crash lane change."""
    LANE_CHANGER = 0
    CRASHED = 1
    NEW_LEADER = 2
    NEW_FOLLOWER = 3
    FOLLOWER_AFTER_NF = 4

    @property
    def short(self) -> str:
        return _SHORT_NAMES[self]


_SHORT_NAMES = {
    Role.LANE_CHANGER: 'LC',
    Role.CRASHED: 'CV',
    Role.NEW_LEADER: 'NL',
    Role.NEW_FOLLOWER: 'NF',
    Role.FOLLOWER_AFTER_NF: 'FANF',
}


@dataclass(frozen=True)
class VehicleState:
    """The state of one vehicle at one grid time."""
    t: float
    x_lon: float
    y_lat: float
    v: float
    a: float
    steer: float
    length: float
    width: float

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0:
            from pclc.utils.warnings import error
            error(f"Vehicle dimensions must be positive, got {self.length} x {self.width}.", ValueError)
        if self.v < 0:
            from pclc.utils.warnings import error
            error(f"Vehicle speed must be non-negative, got {self.v}.", ValueError)

    def features(self):
        """Return `[y_lat, x_lon, v, a, steer]`."""
        return [self.y_lat, self.x_lon, self.v, self.a, self.steer]
