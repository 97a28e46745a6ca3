#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Training samples and sliding-window segmentation.
"""

from __future__ import annotations
import json
import pathlib
from dataclasses import dataclass, field, replace
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, PathLike
from pclc.core._roles import Role, N_ROLES, X_LON, Y_LAT, FEATURE_COLUMNS


@dataclass(frozen=True, eq=False)
class Window:
    """
    One sample cut from a scene.

    Attributes
    ----------
    X: np.ndarray
        History `(T_obs, 5, 5)`: vehicles in `Role` order, features `[y_lat, x_lon, v, a, steer]`.

    Y: np.ndarray
        Lane-changer future positions `(T_pre, 2)` as `(x_lon, y_lat)`.

    B: np.ndarray
        Yield labels `(T_pre,)` in `{0, 1}`.

    future: np.ndarray
        True future states `(T_pre, 5, 7)` of the five roles (raw units, with dimensions),
        used for crash and TTC checks.

    anchor: float
        Longitudinal offset subtracted from `X` and `Y` when normalized.
    """
    X: np.ndarray
    Y: np.ndarray
    B: np.ndarray
    future: np.ndarray
    event_id: str = ''
    start: int = 0
    dt: float = 0.1
    anchor: float = 0.0
    normalized: bool = False

    @property
    def t_obs(self) -> int:
        return self.X.shape[0]

    @property
    def t_pre(self) -> int:
        return self.Y.shape[0]

    def with_arrays(self, **kw) -> 'Window':
        return replace(self, **kw)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'event_id': self.event_id,
            'start': self.start,
            'dt': self.dt,
            'anchor': self.anchor,
            'normalized': self.normalized,
            'features': list(FEATURE_COLUMNS),
            'X': self.X.tolist(),
            'Y': self.Y.tolist(),
            'B': self.B.tolist(),
            'future': self.future.tolist(),
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> 'Window':
        return cls(
            X = np.asarray(d['X'], dtype=np.float64),
            Y = np.asarray(d['Y'], dtype=np.float64),
            B = np.asarray(d['B'], dtype=np.float64),
            future = np.asarray(d['future'], dtype=np.float64),
            event_id = str(d.get('event_id', '')),
            start = int(d.get('start', 0)),
            dt = float(d.get('dt', 0.1)),
            anchor = float(d.get('anchor', 0.0)),
            normalized = bool(d.get('normalized', False)),
        )

    def to_json(self, path: PathLike) -> pathlib.Path:
        path = pathlib.Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f)
        return path

    @classmethod
    def read_json(cls, path: PathLike) -> 'Window':
        with open(path, 'r', encoding='utf-8') as f:
            return cls.from_dict(json.load(f))

    def __repr__(self) -> str:
        return (
            f"Window('{self.event_id}', start={self.start}, "
            + f"T_obs={self.t_obs}, T_pre={self.t_pre}, normalized={self.normalized})"
        )


def window_count(n_steps: int, t_obs: int, t_pre: int, step_steps: int) -> int:
    """`floor((L - (T_obs + T_pre)) / step) + 1`, or 0 if the scene is too short."""
    span = t_obs + t_pre
    if n_steps < span:
        return 0
    return (n_steps - span) // step_steps + 1


def _step_steps(step_s: float, dt: float) -> int:
    from pclc.utils.warnings import error
    k = int(round(step_s / dt))
    if k < 1 or abs(k * dt - step_s) > 1e-9 * max(1.0, step_s):
        error(f"Window step {step_s} s is not a positive multiple of dt={dt} s.", ValueError)
    return k


def build_windows(
        scene: 'pclc.core.Scene',
        t_obs: int = 10,
        t_pre: int = 50,
        step_s: float = 0.5,
        labels: Optional[np.ndarray] = None,
        debug: bool = False,
    ) -> List[Window]:
    """
    Cut a scene into overlapping windows starting at offsets `0, step, 2 * step, ...`.

    Parameters
    ----------
    scene: Scene
        The source scene.

    t_obs: int, default 10
        History length in steps.

    t_pre: int, default 50
        Prediction length in steps.

    step_s: float, default 0.5
        Stride in seconds; must be a multiple of `scene.dt`.

    labels: Optional[np.ndarray], default None
        Per-step yield labels of the scene. If omitted, they are reconstructed
        from the trajectories with `pclc.analytics.label_yielding`.

    Returns
    -------
    A list of windows (empty if the scene is shorter than `t_obs + t_pre` steps).
    """
    from pclc.utils.warnings import error
    if t_obs < 1 or t_pre < 1:
        error(f"Window lengths must be positive, got T_obs={t_obs}, T_pre={t_pre}.", ValueError)
    step = _step_steps(step_s, scene.dt)
    count = window_count(scene.n_steps, t_obs, t_pre, step)
    if count == 0:
        if debug:
            from pclc.utils.debug import dprint
            dprint(f"{scene} is too short for T_obs={t_obs}, T_pre={t_pre}.")
        return []

    if labels is None:
        from pclc.analytics import label_yielding
        labels = label_yielding(scene)
    labels = np.asarray(labels, dtype=np.float64)
    if labels.shape != (scene.n_steps,):
        error(f"Expected {scene.n_steps} labels for {scene}, got shape {labels.shape}.", ValueError)

    lc = int(Role.LANE_CHANGER)
    windows = []
    for i in range(count):
        s = i * step
        obs_end = s + t_obs
        end = obs_end + t_pre
        windows.append(Window(
            X = scene.feature_block(s, obs_end),
            Y = scene.states[obs_end:end, lc, [X_LON, Y_LAT]].copy(),
            B = labels[obs_end:end].copy(),
            future = scene.states[obs_end:end, :N_ROLES, :].copy(),
            event_id = scene.event_id,
            start = s,
            dt = scene.dt,
        ))
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Built {len(windows)} windows from {scene}.")
    return windows
