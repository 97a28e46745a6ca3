#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Scenes are the time-aligned trajectories of one post-crash lane-change event.

```
>>> from pclc.core import Scene, Role
>>> scene = Scene.read_csv('scenes/event-000.csv')
>>> scene.extract_features(Role.LANE_CHANGER, 0.0)
array([ 0. , 45. ,  3. ,  0. ,  0. ])
```

The first five vehicles follow `Role` order. Any further vehicles are extra
target-lane vehicles (those that passed the lane changer before its final gap),
kept so that the gap log can be reconstructed from the trajectories alone.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import Any, Dict, Optional, Sequence, Tuple
from pclc.core._roles import STATE_COLUMNS, N_ROLES


class Scene:
    """
    Trajectories of the role-tagged vehicles over a common time grid.

    Parameters
    ----------
    states: np.ndarray
        Array of shape `(L, V, 7)` with columns `STATE_COLUMNS`, `V >= 5`.

    dt: float, default 0.1
        Grid step in seconds.

    lane_width: float, default 3.5
        Lane width in meters.

    lane_centers: Optional[Sequence[float]], default None
        Lateral coordinates of the original and target lane centers.
        Defaults to `(0.0, lane_width)`.

    event_id: str, default 'scene'
        Identifier used for file names and event-level splits.

    meta: Optional[Dict[str, Any]], default None
        Free-form metadata (e.g. the generator seed).
    """

    from ._features import (
        n_steps,
        n_vehicles,
        times,
        duration,
        index_of,
        state,
        trajectory,
        extract_features,
        feature_block,
        target_lane_vehicles,
        headings,
    )
    from ._io import to_frame, from_frame, to_csv, read_csv, geometry_dict
    from ._validate import validate

    def __init__(
        self,
        states: np.ndarray,
        dt: float = 0.1,
        lane_width: float = 3.5,
        lane_centers: Optional[Sequence[float]] = None,
        event_id: str = 'scene',
        meta: Optional[Dict[str, Any]] = None,
    ):
        from pclc.utils.warnings import error
        from pclc.core._errors import SceneFormatError
        states = np.array(states, dtype=np.float64)
        if states.ndim != 3 or states.shape[2] != len(STATE_COLUMNS) or states.shape[1] < N_ROLES:
            error(
                f"Scene states must have shape (L, V>={N_ROLES}, {len(STATE_COLUMNS)}), "
                + f"got {states.shape}.",
                SceneFormatError,
            )
        if dt <= 0:
            error(f"Scene dt must be positive, got {dt}.", SceneFormatError)
        states.setflags(write=False)
        self.states = states
        self.dt = float(dt)
        self.lane_width = float(lane_width)
        self.lane_centers: Tuple[float, ...] = tuple(
            float(c) for c in (lane_centers if lane_centers is not None else (0.0, lane_width))
        )
        self.event_id = str(event_id)
        self.meta = dict(meta or {})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scene):
            return NotImplemented
        return (
            self.event_id == other.event_id
            and self.dt == other.dt
            and self.lane_width == other.lane_width
            and self.lane_centers == other.lane_centers
            and self.states.shape == other.states.shape
            and self.states.tobytes() == other.states.tobytes()
        )

    def __hash__(self):
        return hash((self.event_id, self.states.shape))

    def __repr__(self) -> str:
        return (
            f"Scene('{self.event_id}', steps={self.n_steps}, "
            + f"vehicles={self.n_vehicles}, dt={self.dt})"
        )
