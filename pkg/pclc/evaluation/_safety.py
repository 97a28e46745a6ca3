#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Crash checks and TTC distributions of predicted futures.

Predicted lane-changer footprints take their heading from the predicted
displacement (smoothed over a few steps) and their size from the window.
Surrounding vehicles use their true futures.
"""

from __future__ import annotations
import math
import numpy as np
from pclc.utils.typing import Dict, List, Optional, Sequence, Tuple
from pclc.core._roles import Role, X_LON, Y_LAT, LENGTH, WIDTH, N_ROLES

LC = int(Role.LANE_CHANGER)
NEIGHBORS = tuple(r for r in range(N_ROLES) if r != LC)


def _speed_floor() -> float:
    from pclc.config import get_config
    return get_config('simgen', 'heading_speed_floor')


def _smooth(values: np.ndarray, window: int) -> np.ndarray:
    """Trailing moving average along the first axis (shorter at the start)."""
    if window <= 1 or values.shape[0] < 2:
        return values
    csum = np.cumsum(values, axis=0)
    out = csum.copy()
    out[window:] = csum[window:] - csum[:-window]
    counts = np.minimum(np.arange(1, values.shape[0] + 1), window).reshape((-1,) + (1,) * (values.ndim - 1))
    return out / counts


def trajectory_boxes(
        positions: np.ndarray,
        length: float,
        width: float,
        dt: float,
        heading_window: int = 1,
        shrink: float = 1.0,
    ) -> Tuple[np.ndarray, np.ndarray]:
    """
    Footprints and velocities along a trajectory.

    Parameters
    ----------
    positions: np.ndarray
        `(T, 2)` positions `(x_lon, y_lat)`.

    heading_window: int, default 1
        Number of steps the finite-difference velocity is averaged over before
        the heading is taken.

    shrink: float, default 1.0
        Scale applied to length and width.

    Returns
    -------
    A tuple of `(T, 5)` boxes `[x, y, heading, length, width]` and `(T, 2)` velocities.
    """
    from pclc.core import velocity_components, heading_from_velocity
    positions = np.asarray(positions, dtype=np.float64)
    vx, vy = velocity_components(positions[:, 0], positions[:, 1], dt)
    vel = _smooth(np.stack([vx, vy], axis=-1), heading_window)
    heading = heading_from_velocity(vel[:, 0], vel[:, 1], _speed_floor())
    n = positions.shape[0]
    boxes = np.column_stack([
        positions[:, 0],
        positions[:, 1],
        heading,
        np.full(n, length * shrink),
        np.full(n, width * shrink),
    ])
    return boxes, vel


def neighbor_boxes(window: 'pclc.core.Window', shrink: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """True future footprints `(T, 4, 5)` and velocities `(T, 4, 2)` of the four surrounding roles."""
    boxes, vels = [], []
    for r in NEIGHBORS:
        f = window.future[:, r, :]
        b, v = trajectory_boxes(
            f[:, [X_LON, Y_LAT]], float(f[0, LENGTH]), float(f[0, WIDTH]), window.dt, 1, shrink,
        )
        boxes.append(b)
        vels.append(v)
    return np.stack(boxes, axis=1), np.stack(vels, axis=1)


def predicted_boxes(
        window: 'pclc.core.Window',
        trajectory: np.ndarray,
        heading_window: Optional[int] = None,
        shrink: float = 1.0,
    ) -> Tuple[np.ndarray, np.ndarray]:
    """Footprints `(T, 5)` and velocities `(T, 2)` of a predicted lane-changer trajectory."""
    if heading_window is None:
        from pclc.config import get_config
        heading_window = get_config('evaluation', 'heading_window')
    lc = window.future[0, LC, :]
    return trajectory_boxes(trajectory, float(lc[LENGTH]), float(lc[WIDTH]), window.dt, heading_window, shrink)


def crash_flags(
        samples: np.ndarray,
        windows: Sequence['pclc.core.Window'],
        steps: Optional[int] = None,
        shrink: Optional[float] = None,
        heading_window: Optional[int] = None,
    ) -> np.ndarray:
    """
    Flag windows where any of the `k` predicted trajectories overlaps a surrounding
    vehicle's true footprint at a common step.

    Parameters
    ----------
    samples: np.ndarray
        `(k, N, T_pre, 2)` predictions in meters.

    steps: Optional[int], default None
        Only check the first `steps` future steps.

    Returns
    -------
    A boolean array `(N,)`.
    """
    from pclc.analytics import overlap_batch
    if shrink is None:
        from pclc.config import get_config
        shrink = get_config('evaluation', 'shrink')
    samples = np.asarray(samples, dtype=np.float64)
    flags = np.zeros(len(windows), dtype=bool)
    for i, w in enumerate(windows):
        nb, _ = neighbor_boxes(w, shrink)
        nb = nb[:steps]
        for traj in samples[:, i]:
            boxes, _ = predicted_boxes(w, traj, heading_window, shrink)
            if np.any(overlap_batch(boxes[:steps, None, :], nb)):
                flags[i] = True
                break
    return flags


def false_crash_rate(
        model,
        windows: Sequence['pclc.core.Window'],
        k: Optional[int] = None,
        seed: Optional[int] = None,
        stats=None,
        steps: Optional[int] = None,
        shrink: Optional[float] = None,
        heading_window: Optional[int] = None,
        samples: Optional[np.ndarray] = None,
    ) -> float:
    """
    Share of windows where at least one of `k` predicted trajectories crashes
    into a surrounding vehicle's true future.

    Pass precomputed `samples` `(k, N, T_pre, 2)` to skip the prediction step.
    """
    if not windows:
        return 0.0
    if samples is None:
        from pclc.evaluation._predict import sample_trajectories
        samples = sample_trajectories(model, windows, k=k, seed=seed, stats=stats)
    flags = crash_flags(samples, windows, steps=steps, shrink=shrink, heading_window=heading_window)
    return float(np.count_nonzero(flags)) / len(windows)


def min_ttc_trajectory(
        window: 'pclc.core.Window',
        trajectory: np.ndarray,
        steps: Optional[int] = None,
        heading_window: Optional[int] = None,
        horizon: Optional[float] = None,
    ) -> float:
    """Minimum 2-D TTC between a lane-changer trajectory and the true surrounding futures."""
    from pclc.analytics import ttc_batch
    boxes, vel = predicted_boxes(window, trajectory, heading_window)
    nb, nb_vel = neighbor_boxes(window)
    ttc = ttc_batch(
        boxes[:steps, None, :],
        vel[:steps, None, :],
        nb[:steps],
        nb_vel[:steps],
        horizon = horizon,
    )
    return float(np.min(ttc)) if ttc.size else float('inf')


def bucket_labels(edges: Sequence[float]) -> List[str]:
    """`['<e0', 'e0-e1', ..., '>=en']`."""
    fmt = lambda v: f"{v:g}"
    labels = [f"<{fmt(edges[0])}"]
    labels += [f"{fmt(a)}-{fmt(b)}" for a, b in zip(edges[:-1], edges[1:])]
    labels.append(f">={fmt(edges[-1])}")
    return labels


def ttc_bucket_counts(min_ttcs: Sequence[float], edges: Optional[Sequence[float]] = None) -> Dict[str, int]:
    """Count minimum TTCs per bucket; collision-free windows (`inf`) land in the last bucket."""
    if edges is None:
        from pclc.config import get_config
        edges = get_config('evaluation', 'ttc_bucket_edges')
    edges = sorted(float(e) for e in edges)
    idx = np.digitize(np.asarray(list(min_ttcs), dtype=np.float64), edges)
    counts = np.bincount(idx, minlength=len(edges) + 1)
    return {label: int(c) for label, c in zip(bucket_labels(edges), counts)}


def event_minima(windows: Sequence['pclc.core.Window'], values: Sequence[float]) -> List[float]:
    """Minimum of `values` over the windows of each event, in order of first appearance."""
    minima: Dict[str, float] = {}
    for w, v in zip(windows, values):
        minima[w.event_id] = min(minima.get(w.event_id, math.inf), float(v))
    return list(minima.values())


def ttc_deviation(
        model,
        windows: Sequence['pclc.core.Window'],
        horizons: Optional[Sequence[float]] = None,
        edges: Optional[Sequence[float]] = None,
        stats=None,
        predictions: Optional[np.ndarray] = None,
    ) -> Dict[float, Dict[str, int]]:
    """
    Absolute difference, per TTC bucket and horizon, between the number of events
    whose true futures and whose predicted futures fall in that bucket.

    An event's minimum TTC is the minimum over all of its windows, so each event
    counts once however many windows it was cut into.
    Predicted futures decode the latent mean; pass `predictions` `(N, T_pre, 2)` to override.

    Returns
    -------
    A dictionary `{horizon: {bucket: |true count - predicted count|}}`.
    """
    from pclc.config import get_config
    from pclc.evaluation._metrics import horizon_steps
    from pclc.evaluation._predict import sample_trajectories, true_future
    if horizons is None:
        horizons = get_config('evaluation', 'horizons')
    if not windows:
        return {}
    if predictions is None:
        predictions = sample_trajectories(model, windows, k=1, stats=stats, mean_latent=True)[0]
    table = {}
    for h, steps in horizon_steps(horizons, windows[0].dt, windows[0].t_pre):
        true_counts = ttc_bucket_counts(
            event_minima(windows, [min_ttc_trajectory(w, true_future(w), steps) for w in windows]),
            edges,
        )
        pred_counts = ttc_bucket_counts(
            event_minima(windows, [min_ttc_trajectory(w, p, steps) for w, p in zip(windows, predictions)]),
            edges,
        )
        table[h] = {b: abs(true_counts[b] - pred_counts[b]) for b in true_counts}
    return table
