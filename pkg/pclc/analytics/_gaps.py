#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Reconstruct the target-lane gap log of a lane-change event.

A gap between two consecutive target-lane vehicles is available while the
leader's rear is ahead of the lane changer's front and the follower's front is
behind the lane changer's rear, each by a configurable margin. The log covers
the steps up to (and including) the one where the lane changer's center crosses
the lane boundary.
"""

from __future__ import annotations
from dataclasses import dataclass
import numpy as np
from pclc.utils.typing import List, Optional, Sequence, Tuple
from pclc.core._roles import Role, X_LON, Y_LAT, LENGTH


@dataclass(frozen=True)
class GapEvent:
    """
    One gap that became available.

    `lead` and `lag` are vehicle indices; times are in seconds.
    `t_closed` is `None` if the gap stayed available until the end of the log.
    """
    index: int
    lead: int
    lag: int
    t_available: float
    t_closed: Optional[float] = None

    def to_dict(self):
        return {
            'index': self.index,
            'lead': self.lead,
            'lag': self.lag,
            't_available': self.t_available,
            't_closed': self.t_closed,
        }


def gap_margins() -> Tuple[float, float]:
    from pclc.config import get_config
    cf = get_config('analytics', 'gaps')
    return cf['lead_margin'], cf['lag_margin']


def gap_available(
        lead_rear: np.ndarray,
        lag_front: np.ndarray,
        lc_front: np.ndarray,
        lc_rear: np.ndarray,
        lead_margin: float,
        lag_margin: float,
    ) -> np.ndarray:
    """The availability predicate shared by the generator and the analytics."""
    return (lead_rear > lc_front + lead_margin) & (lag_front < lc_rear - lag_margin)


def crossing_step(y_lc: np.ndarray, lane_center: float, lane_width: float) -> Optional[int]:
    """First step at which the lane changer's center reaches the lane boundary, if any."""
    crossed = np.flatnonzero(y_lc - lane_center >= lane_width / 2.0)
    return int(crossed[0]) if crossed.size else None


def availability_log(
        x: np.ndarray,
        length: np.ndarray,
        lc_x: np.ndarray,
        lc_length: np.ndarray,
        order: Sequence[int],
        stop: int,
        margins: Optional[Tuple[float, float]] = None,
    ) -> List[Tuple[int, int, int, Optional[int]]]:
    """
    Compute availability spans for consecutive pairs of an ordered vehicle list.

    Parameters
    ----------
    x, length: np.ndarray
        `(L, V)` longitudinal centers and lengths.

    lc_x, lc_length: np.ndarray
        `(L,)` lane-changer center and length.

    order: Sequence[int]
        Target-lane vehicle indices, front to back.

    stop: int
        Last step (inclusive) of the log.

    Returns
    -------
    A list of `(lead, lag, first_step, closed_step)` sorted by `first_step`
    (ties broken front to back).
    """
    lead_margin, lag_margin = margins if margins is not None else gap_margins()
    steps = slice(0, stop + 1)
    lc_front = lc_x[steps] + lc_length[steps] / 2.0
    lc_rear = lc_x[steps] - lc_length[steps] / 2.0
    spans = []
    for rank, (lead, lag) in enumerate(zip(order[:-1], order[1:])):
        available = gap_available(
            x[steps, lead] - length[steps, lead] / 2.0,
            x[steps, lag] + length[steps, lag] / 2.0,
            lc_front,
            lc_rear,
            lead_margin,
            lag_margin,
        )
        hits = np.flatnonzero(available)
        if not hits.size:
            continue
        first = int(hits[0])
        closed = np.flatnonzero(~available[first:])
        spans.append((rank, lead, lag, first, int(first + closed[0]) if closed.size else None))
    spans.sort(key=lambda s: (s[3], s[0]))
    return [(lead, lag, first, closed) for _, lead, lag, first, closed in spans]


def gap_events(scene, margins: Optional[Tuple[float, float]] = None) -> List[GapEvent]:
    """
    Reconstruct the gap log of a scene from its trajectories.

    Returns
    -------
    Gap events in order of availability, indexed from 0.
    """
    lc = int(Role.LANE_CHANGER)
    x = scene.states[:, :, X_LON]
    length = scene.states[:, :, LENGTH]
    cross = crossing_step(scene.states[:, lc, Y_LAT], scene.lane_centers[0], scene.lane_width)
    stop = cross if cross is not None else scene.n_steps - 1
    spans = availability_log(
        x, length, x[:, lc], length[:, lc], scene.target_lane_vehicles(), stop, margins=margins,
    )
    return [
        GapEvent(
            index = i,
            lead = lead,
            lag = lag,
            t_available = first * scene.dt,
            t_closed = (closed * scene.dt if closed is not None else None),
        )
        for i, (lead, lag, first, closed) in enumerate(spans)
    ]


def final_gap_index(scene, events: Optional[List[GapEvent]] = None) -> int:
    """
    Index of the gap the lane changer merges into: the logged pair straddling its
    center when it crosses the lane boundary, else the last logged gap.
    """
    from pclc.utils.warnings import error
    from pclc.analytics._errors import GapLogError
    if events is None:
        events = gap_events(scene)
    if not events:
        error(f"No gap became available in {scene}.", GapLogError)
    lc = int(Role.LANE_CHANGER)
    cross = crossing_step(scene.states[:, lc, Y_LAT], scene.lane_centers[0], scene.lane_width)
    if cross is not None:
        x = scene.states[cross, :, X_LON]
        for event in events:
            if x[event.lead] > x[lc] > x[event.lag]:
                return event.index
    return events[-1].index


def label_yielding(
        scene,
        final_gap: Optional[int] = None,
        events: Optional[List[GapEvent]] = None,
    ) -> np.ndarray:
    """
    Per-step yield labels from the final-gap rule.

    The new follower is non-yielding (0) until the final gap becomes available and
    yielding (1) from then on. If the final gap is the first logged gap, every step
    is labeled yielding.

    Raises
    ------
    `GapLogError` if `final_gap` is not in the gap log.
    """
    from pclc.utils.warnings import error
    from pclc.analytics._errors import GapLogError
    if events is None:
        events = gap_events(scene)
    if final_gap is None:
        final_gap = final_gap_index(scene, events)
    by_index = {e.index: e for e in events}
    if final_gap not in by_index:
        error(
            f"Gap {final_gap} is not in the gap log of {scene} "
            + f"(logged: {sorted(by_index)}).",
            GapLogError,
        )
    labels = np.ones(scene.n_steps, dtype=np.int64)
    if final_gap == events[0].index:
        return labels
    flip = int(round(by_index[final_gap].t_available / scene.dt))
    labels[:flip] = 0
    return labels


def count_rejected_gaps(scene, events: Optional[List[GapEvent]] = None) -> int:
    """Number of logged gaps other than the final one."""
    if events is None:
        events = gap_events(scene)
    if not events:
        return 0
    final = final_gap_index(scene, events)
    return sum(1 for e in events if e.index != final)
