#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Two-dimensional time-to-collision between rectangular footprints.

With constant velocities and headings the footprints are static shapes and the
relative center `p(t) = p0 + t * (v_b - v_a)` moves along a ray. The two boxes
overlap iff `p(t)` lies in their Minkowski difference, a convex polygon whose
edge normals are the four box axes. Clipping the ray against the four slabs
`|n . p(t)| < R_n` yields the exact entry time.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
import numpy as np
from pclc.utils.typing import Optional, Sequence, Tuple, Union
from pclc.analytics._geometry import OrientedBox, separating_slabs


@dataclass(frozen=True)
class TTCQuery:
    """Two footprints and their (constant) velocity vectors."""
    box_a: OrientedBox
    vel_a: Tuple[float, float]
    box_b: OrientedBox
    vel_b: Tuple[float, float]


def _default_horizon() -> float:
    from pclc.config import get_config
    return get_config('analytics', 'ttc', 'horizon_s')


def ttc_batch(
        boxes_a: np.ndarray,
        vel_a: np.ndarray,
        boxes_b: np.ndarray,
        vel_b: np.ndarray,
        horizon: Optional[float] = None,
    ) -> np.ndarray:
    """
    Vectorized exact first-contact times.

    Parameters
    ----------
    boxes_a, boxes_b: np.ndarray
        Arrays `(..., 5)` of `[x, y, heading, length, width]`.

    vel_a, vel_b: np.ndarray
        Arrays `(..., 2)` of velocity vectors (m/s).

    horizon: Optional[float], default None
        Contacts later than this are reported as `inf`.
        Defaults to `analytics:ttc:horizon_s`.

    Returns
    -------
    An array `(...)` of times: `0.0` for initial overlap, `inf` for no collision.
    """
    if horizon is None:
        horizon = _default_horizon()
    boxes_a = np.asarray(boxes_a, dtype=np.float64)
    boxes_b = np.asarray(boxes_b, dtype=np.float64)
    boxes_a, boxes_b = np.broadcast_arrays(boxes_a, boxes_b)
    normals, radii = separating_slabs(boxes_a, boxes_b)
    p0 = (boxes_b[..., :2] - boxes_a[..., :2])[..., None, :]
    w = (np.asarray(vel_b, dtype=np.float64) - np.asarray(vel_a, dtype=np.float64))[..., None, :]
    d = np.sum(normals * p0, axis=-1)
    s = np.sum(normals * w, axis=-1)

    moving = s != 0.0
    with np.errstate(divide='ignore', invalid='ignore'):
        t1 = np.where(moving, (-radii - d) / s, -np.inf)
        t2 = np.where(moving, (radii - d) / s, np.inf)
    lo = np.minimum(t1, t2)
    hi = np.maximum(t1, t2)
    ### A slab parallel to the motion either always or never contains the ray.
    inside_static = np.abs(d) < radii
    lo = np.where(moving, lo, np.where(inside_static, -np.inf, np.inf))
    hi = np.where(moving, hi, np.where(inside_static, np.inf, -np.inf))

    enter = np.max(lo, axis=-1)
    exit_ = np.min(hi, axis=-1)
    overlapping_now = np.all(np.abs(d) < radii, axis=-1)
    hits = (enter < exit_) & (exit_ > 0.0)
    ttc = np.where(hits, np.maximum(enter, 0.0), np.inf)
    ttc = np.where(overlapping_now, 0.0, ttc)
    return np.where(ttc <= horizon, ttc, np.inf)


def ttc_2d(query: TTCQuery, horizon: Optional[float] = None) -> float:
    """
    Return the exact time until two footprints first overlap, or `inf` for no collision.

    Examples
    --------
    >>> from pclc.analytics import OrientedBox, TTCQuery, ttc_2d
    >>> a = OrientedBox(0.0, 0.0, 0.0, 4.0, 2.0)
    >>> b = OrientedBox(14.0, 0.0, 0.0, 4.0, 2.0)
    >>> ttc_2d(TTCQuery(a, (5.0, 0.0), b, (0.0, 0.0)))
    2.0
    """
    return float(ttc_batch(
        query.box_a.as_array(),
        np.asarray(query.vel_a, dtype=np.float64),
        query.box_b.as_array(),
        np.asarray(query.vel_b, dtype=np.float64),
        horizon = horizon,
    ))


def scene_boxes_and_velocities(scene, speed_floor: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return `(L, V, 5)` footprints and `(L, V, 2)` velocities of every vehicle.
    Headings and velocities come from finite differences of the positions.
    """
    from pclc.core import velocity_components, heading_from_velocity
    from pclc.core._roles import X_LON, Y_LAT, LENGTH, WIDTH
    if speed_floor is None:
        from pclc.config import get_config
        speed_floor = get_config('simgen', 'heading_speed_floor')
    x, y = scene.states[:, :, X_LON], scene.states[:, :, Y_LAT]
    vx, vy = velocity_components(x, y, scene.dt)
    heading = heading_from_velocity(vx, vy, speed_floor)
    boxes = np.stack([x, y, heading, scene.states[:, :, LENGTH], scene.states[:, :, WIDTH]], axis=-1)
    return boxes, np.stack([vx, vy], axis=-1)


def min_ttc_event(
        scene,
        subject: int = 0,
        others: Optional[Sequence[int]] = None,
        horizon: Optional[float] = None,
        t_range: Optional[Tuple[float, float]] = None,
    ) -> float:
    """
    Minimum 2-D TTC between `subject` and the other vehicles over all steps.

    Steps without a collision course are excluded; returns `inf` if none remain.

    Parameters
    ----------
    scene: Scene
        The event.

    subject: int, default 0
        The subject vehicle index (the lane changer by default).

    others: Optional[Sequence[int]], default None
        Vehicles to test against. Defaults to every other vehicle in the scene.

    t_range: Optional[Tuple[float, float]], default None
        Restrict the minimum to steps with `t_range[0] <= t <= t_range[1]`.
    """
    subject = int(subject)
    if others is None:
        others = [i for i in range(scene.n_vehicles) if i != subject]
    others = [int(i) for i in others]
    if not others:
        return math.inf
    boxes, vel = scene_boxes_and_velocities(scene)
    if t_range is not None:
        times = scene.times
        tol = 1e-9 * max(1.0, float(times[-1]))
        keep = (times >= t_range[0] - tol) & (times <= t_range[1] + tol)
        boxes, vel = boxes[keep], vel[keep]
    ttc = ttc_batch(
        boxes[:, [subject], :],
        vel[:, [subject], :],
        boxes[:, others, :],
        vel[:, others, :],
        horizon = horizon,
    )
    return float(np.min(ttc)) if ttc.size else math.inf


def ttc_bucket_shares(min_ttcs: Sequence[float], thresholds: Optional[Sequence[float]] = None):
    """
    Share of events whose minimum TTC falls below each threshold.

    The shares are nested, so they are monotone non-decreasing in the threshold.

    Returns
    -------
    A dictionary `{threshold: share}` (empty input gives zeros).
    """
    if thresholds is None:
        from pclc.config import get_config
        thresholds = get_config('analytics', 'ttc', 'thresholds')
    values = np.asarray(list(min_ttcs), dtype=np.float64)
    n = values.size
    return {
        float(th): (float(np.count_nonzero(values < th)) / n if n else 0.0)
        for th in sorted(thresholds)
    }
