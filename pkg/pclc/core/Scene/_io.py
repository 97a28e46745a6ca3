#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Read and write scenes as CSV tables with a JSON geometry sidecar.
"""

from __future__ import annotations
import json
import pathlib
import numpy as np
from pclc.utils.typing import Any, Dict, PathLike
from pclc.core._roles import STATE_COLUMNS

CSV_COLUMNS = ('t', 'role') + STATE_COLUMNS
FLOAT_FORMAT = '%.17g'


def geometry_dict(self) -> Dict[str, Any]:
    """Return the sidecar contents (everything except the trajectories)."""
    from pclc.config.static import STATIC_CONFIG
    return {
        'format': STATIC_CONFIG['formats']['scene'],
        'event_id': self.event_id,
        'dt': self.dt,
        'lane_width': self.lane_width,
        'lane_centers': list(self.lane_centers),
        'n_steps': self.n_steps,
        'n_vehicles': self.n_vehicles,
        'meta': self.meta,
    }


def to_frame(self) -> 'pd.DataFrame':
    """
    Return the scene as a long DataFrame with one row per `(t, role)`.
    """
    from pclc.utils.packages import import_pandas
    pd = import_pandas()
    L, V, _ = self.states.shape
    t = np.repeat(np.arange(L) * self.dt, V)
    role = np.tile(np.arange(V), L)
    data = {'t': t, 'role': role}
    flat = self.states.reshape(L * V, -1)
    for i, col in enumerate(STATE_COLUMNS):
        data[col] = flat[:, i]
    return pd.DataFrame(data, columns=list(CSV_COLUMNS))


@classmethod
def from_frame(
        cls,
        df: 'pd.DataFrame',
        dt: float = 0.1,
        **kw
    ) -> 'Scene':
    """
    Build a scene from a long DataFrame with the columns of `to_frame()`.
    """
    from pclc.utils.warnings import error
    from pclc.core._errors import SceneFormatError
    missing = [c for c in CSV_COLUMNS if c not in df.columns]
    if missing:
        error(f"Scene table is missing columns {missing}.", SceneFormatError)
    df = df.sort_values(['t', 'role'], kind='mergesort')
    steps = np.rint(df['t'].to_numpy(dtype=float) / dt).astype(int)
    roles = df['role'].to_numpy(dtype=int)
    L, V = steps.max() + 1, roles.max() + 1
    if len(df) != L * V:
        error(
            f"Scene table has {len(df)} rows; expected {L} steps x {V} vehicles.",
            SceneFormatError,
        )
    states = np.empty((L, V, len(STATE_COLUMNS)))
    states[steps, roles, :] = df[list(STATE_COLUMNS)].to_numpy(dtype=float)
    return cls(states, dt=dt, **kw)


def to_csv(self, path: PathLike, sidecar: bool = True) -> pathlib.Path:
    """
    Write the scene to `path` (CSV) and `<event_id>.scene.json` next to it.

    Returns
    -------
    The CSV path.
    """
    from pclc.config.static import STATIC_CONFIG
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    self.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT)
    if sidecar:
        meta_path = path.parent / (path.stem + STATIC_CONFIG['files']['scene_meta_suffix'])
        with open(meta_path, 'w', encoding='utf-8') as f:
            json.dump(self.geometry_dict(), f, indent=2, sort_keys=True)
    return path


@classmethod
def read_csv(cls, path: PathLike) -> 'Scene':
    """
    Read a scene CSV (and its geometry sidecar, if present).
    """
    from pclc.config.static import STATIC_CONFIG
    from pclc.utils.packages import import_pandas
    pd = import_pandas()
    path = pathlib.Path(path)
    meta_path = path.parent / (path.stem + STATIC_CONFIG['files']['scene_meta_suffix'])
    geometry = {}
    if meta_path.exists():
        with open(meta_path, 'r', encoding='utf-8') as f:
            geometry = json.load(f)
    df = pd.read_csv(path, float_precision='round_trip')
    return cls.from_frame(
        df,
        dt = geometry.get('dt', 0.1),
        lane_width = geometry.get('lane_width', 3.5),
        lane_centers = geometry.get('lane_centers', None),
        event_id = geometry.get('event_id', path.stem),
        meta = geometry.get('meta', {}),
    )
