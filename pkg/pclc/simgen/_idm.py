#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Vectorized Intelligent Driver Model and the ballistic position update.
"""

from __future__ import annotations
import numpy as np

### Net gaps below this are treated as this value to keep the interaction term finite.
MIN_NET_GAP = 1e-3


def idm_acceleration(
        v: np.ndarray,
        v_lead: np.ndarray,
        gap: np.ndarray,
        desired_speed,
        max_accel,
        comfortable_decel,
        min_gap,
        time_headway,
        delta,
    ) -> np.ndarray:
    """
    IDM acceleration for followers with net gap `gap` to their leaders.

    A leader-free vehicle is expressed with `gap = inf`. Parameters may be scalars
    or per-vehicle arrays.

    Returns
    -------
    Unclipped accelerations (m/s^2).
    """
    v = np.asarray(v, dtype=np.float64)
    dv = v - np.asarray(v_lead, dtype=np.float64)
    s_star = min_gap + np.maximum(0.0, v * time_headway + v * dv / (2.0 * np.sqrt(max_accel * comfortable_decel)))
    gap = np.maximum(np.asarray(gap, dtype=np.float64), MIN_NET_GAP)
    free = (v / desired_speed) ** delta
    interaction = np.where(np.isinf(gap), 0.0, (s_star / np.where(np.isinf(gap), 1.0, gap)) ** 2)
    return max_accel * (1.0 - free - interaction)


def ballistic_step(x: np.ndarray, v: np.ndarray, a: np.ndarray, dt: float):
    """
    Advance positions and speeds by one step with constant acceleration.

    A vehicle that would reverse instead stops exactly where its speed reaches zero.

    Returns
    -------
    A tuple `(x_next, v_next, a_effective)`.
    """
    v_next = v + a * dt
    stops = v_next < 0.0
    safe_a = np.where(stops, a, -1.0)
    x_next = np.where(stops, x - v * v / (2.0 * safe_a), x + v * dt + 0.5 * a * dt * dt)
    a_eff = np.where(stops, -v / dt, a)
    return x_next, np.where(stops, 0.0, v_next), a_eff


def smoothstep(u: float) -> float:
    """Cubic `3u^2 - 2u^3` on `[0, 1]`, clamped outside."""
    u = min(max(u, 0.0), 1.0)
    return u * u * (3.0 - 2.0 * u)
