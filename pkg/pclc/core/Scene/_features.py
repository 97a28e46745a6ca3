#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Indexing and feature extraction for scenes.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import List, Union
from pclc.core._roles import (
    Role, VehicleState, FEATURE_INDICES, N_ROLES, X_LON, Y_LAT, STATE_COLUMNS,
)

GRID_TOLERANCE = 1e-9


@property
def n_steps(self) -> int:
    return self.states.shape[0]


@property
def n_vehicles(self) -> int:
    return self.states.shape[1]


@property
def times(self) -> np.ndarray:
    return np.arange(self.n_steps) * self.dt


@property
def duration(self) -> float:
    return (self.n_steps - 1) * self.dt


def index_of(self, t: float) -> int:
    """
    Return the grid index of time `t`.

    Raises
    ------
    `GridError` if `t` is not within 1e-9 (relative) of a grid time inside the scene.
    """
    from pclc.utils.warnings import error
    from pclc.core._errors import GridError
    k = int(round(t / self.dt))
    if abs(k * self.dt - t) > GRID_TOLERANCE * max(1.0, abs(t)) or not 0 <= k < self.n_steps:
        error(f"Time {t} is not on the grid of {self} (dt={self.dt}).", GridError)
    return k


def state(self, role: Union[Role, int], t: float) -> VehicleState:
    """Return the `VehicleState` of a vehicle at time `t`."""
    k = self.index_of(t)
    row = self.states[k, int(role)]
    return VehicleState(k * self.dt, *(float(v) for v in row))


def trajectory(self, role: Union[Role, int]) -> np.ndarray:
    """Return the `(L, 7)` state series of one vehicle."""
    return self.states[:, int(role), :]


def extract_features(self, role: Union[Role, int], t: float) -> np.ndarray:
    """
    Return `[y_lat, x_lon, v, a, steer]` for a vehicle at grid time `t`.
    """
    k = self.index_of(t)
    return self.states[k, int(role), list(FEATURE_INDICES)].copy()


def feature_block(self, start: int, stop: int) -> np.ndarray:
    """Return the `(stop - start, 5, 5)` feature block of the five roles."""
    return self.states[start:stop, :N_ROLES, :][:, :, list(FEATURE_INDICES)].copy()


def target_lane_vehicles(self) -> List[int]:
    """
    Return the vehicle indices that drive in the target lane, ordered front to back
    by their initial longitudinal position.
    """
    indices = [int(Role.NEW_LEADER), int(Role.NEW_FOLLOWER), int(Role.FOLLOWER_AFTER_NF)]
    indices += list(range(N_ROLES, self.n_vehicles))
    return sorted(indices, key=lambda i: -self.states[0, i, X_LON])


def headings(self, speed_floor: float = 1.0) -> np.ndarray:
    """Return the `(L, V)` heading of every vehicle, derived from its positions."""
    from pclc.core._kinematics import velocity_components, heading_from_velocity
    vx, vy = velocity_components(self.states[:, :, X_LON], self.states[:, :, Y_LAT], self.dt)
    return heading_from_velocity(vx, vy, speed_floor)
