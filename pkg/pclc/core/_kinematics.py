#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Derive headings and steering proxies from sampled positions.
"""

from __future__ import annotations
import numpy as np


def velocity_components(x: np.ndarray, y: np.ndarray, dt: float) -> 'Tuple[np.ndarray, np.ndarray]':
    """
    Finite-difference velocity along the first axis (central inside, one-sided at the ends).
    """
    if x.shape[0] < 2:
        return np.zeros_like(x), np.zeros_like(y)
    return np.gradient(x, dt, axis=0), np.gradient(y, dt, axis=0)


def heading_from_velocity(vx: np.ndarray, vy: np.ndarray, speed_floor: float = 1.0) -> np.ndarray:
    """
    `atan2(vy, max(vx, speed_floor))`: a stationary vehicle points along the lane.
    """
    return np.arctan2(vy, np.maximum(vx, speed_floor))


def steer_from_heading(heading: np.ndarray) -> np.ndarray:
    """Per-step heading change; the first step is zero."""
    steer = np.zeros_like(heading)
    steer[1:] = np.diff(heading, axis=0)
    return steer
