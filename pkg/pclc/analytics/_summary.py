#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Per-event behavioral summaries and their distributions over a batch of scenes.
"""

from __future__ import annotations
import json
import math
import pathlib
from dataclasses import dataclass, asdict, field
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, PathLike, Sequence

### Quantities whose distributions are aggregated.
DISTRIBUTION_FIELDS = (
    'duration',
    'initial_speed',
    'end_speed',
    'speed_difference',
    'mean_speed_difference',
    'non_yield_proportion',
    'kinematic_non_yield_proportion',
    'min_ttc',
)
REJECTED_BUCKETS = ('0', '1', '2', '>=3')


@dataclass(frozen=True)
class BehaviorSummary:
    """
    Behavioral quantities of one post-crash lane change.

    Speeds are in m/s, times in seconds. `speed_difference` is the lane changer's
    speed minus the new follower's at the maneuver start; `mean_speed_difference`
    averages the same difference over the maneuver.
    """
    event_id: str
    t_start: float
    t_end: float
    duration: float
    initial_speed: float
    end_speed: float
    speed_difference: float
    mean_speed_difference: float
    rejected_gaps: int
    non_yield_proportion: float
    kinematic_non_yield_proportion: float
    min_ttc: float

    def __post_init__(self):
        if not self.duration > 0.0:
            raise ValueError(f"Duration must be positive, got {self.duration}.")
        for name in ('non_yield_proportion', 'kinematic_non_yield_proportion'):
            p = getattr(self, name)
            if not (0.0 <= p <= 1.0 or math.isnan(p)):
                raise ValueError(f"{name} must lie in [0, 1], got {p}.")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def summarize_event(scene, debug: bool = False) -> BehaviorSummary:
    """
    Summarize one scene: boundaries from the wavelet detector, labels from the
    final-gap rule, rejected gaps from the reconstructed gap log, and the minimum
    TTC of the lane changer over the maneuver.
    """
    from pclc.utils.warnings import warn
    from pclc.core._roles import Role, V
    from pclc.analytics._boundaries import detect_scene_boundaries
    from pclc.analytics._gaps import gap_events, label_yielding, count_rejected_gaps
    from pclc.analytics._errors import GapLogError
    from pclc.analytics._yielding import identify_yielding_kinematic
    from pclc.analytics._ttc import min_ttc_event

    boundary = detect_scene_boundaries(scene, debug=debug)
    start = scene.index_of(boundary.t_start)
    end = scene.index_of(boundary.t_end)
    lc, nf = int(Role.LANE_CHANGER), int(Role.NEW_FOLLOWER)
    v = scene.states[:, :, V]
    diff = v[start:end + 1, lc] - v[start:end + 1, nf]

    events = gap_events(scene)
    if events:
        labels = label_yielding(scene, events=events)
        non_yield = float(np.mean(labels[start:end + 1] == 0))
    else:
        warn(f"No gap became available in {scene}; its non-yield proportion is undefined.", stack=False)
        non_yield = math.nan
    kinematic = identify_yielding_kinematic(scene)

    return BehaviorSummary(
        event_id = scene.event_id,
        t_start = boundary.t_start,
        t_end = boundary.t_end,
        duration = boundary.duration,
        initial_speed = float(v[start, lc]),
        end_speed = float(v[end, lc]),
        speed_difference = float(diff[0]),
        mean_speed_difference = float(np.mean(diff)),
        rejected_gaps = count_rejected_gaps(scene, events),
        non_yield_proportion = non_yield,
        kinematic_non_yield_proportion = float(np.mean(kinematic[start:end + 1] == 0)),
        min_ttc = min_ttc_event(scene, subject=lc, t_range=(boundary.t_start, boundary.t_end)),
    )


def rejected_gap_buckets(counts: Sequence[int]) -> Dict[str, float]:
    """Share of events with 0, 1, 2 and at least 3 rejected gaps."""
    counts = np.asarray(list(counts), dtype=np.int64)
    n = counts.size
    if not n:
        return {b: 0.0 for b in REJECTED_BUCKETS}
    return {
        '0': float(np.count_nonzero(counts == 0)) / n,
        '1': float(np.count_nonzero(counts == 1)) / n,
        '2': float(np.count_nonzero(counts == 2)) / n,
        '>=3': float(np.count_nonzero(counts >= 3)) / n,
    }


@dataclass
class BehaviorReport:
    """Per-event rows (a `pandas.DataFrame`) and the JSON-ready aggregate."""
    events: 'pd.DataFrame'
    aggregate: Dict[str, Any] = field(default_factory=dict)

    def write(self, directory: PathLike) -> List[pathlib.Path]:
        """Write `events.csv` and `summary.json` into `directory`."""
        from pclc.config.static import STATIC_CONFIG
        from pclc.utils.misc import jsonable
        directory = pathlib.Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        csv_path = directory / STATIC_CONFIG['files']['summary_events']
        json_path = directory / STATIC_CONFIG['files']['summary_aggregate']
        self.events.to_csv(csv_path, index=False, float_format='%.17g')
        with open(json_path, 'w', encoding='utf-8') as f:
            json.dump(jsonable(self.aggregate), f, indent=2, sort_keys=True)
        return [csv_path, json_path]


def aggregate_summaries(frame: 'pd.DataFrame', thresholds: Optional[Sequence[float]] = None) -> Dict[str, Any]:
    """
    Distribution statistics of every summary quantity, TTC threshold shares and
    rejected-gap buckets.
    """
    from pclc.analytics._ttc import ttc_bucket_shares
    distributions = {}
    for name in DISTRIBUTION_FIELDS:
        values = frame[name].replace([np.inf, -np.inf], np.nan).dropna() if len(frame) else frame[name]
        described = values.describe(percentiles=[0.25, 0.5, 0.75]) if len(values) else None
        distributions[name] = (
            {
                'count': int(described['count']),
                'mean': float(described['mean']),
                'std': float(described['std']) if len(values) > 1 else 0.0,
                'min': float(described['min']),
                'q25': float(described['25%']),
                'median': float(described['50%']),
                'q75': float(described['75%']),
                'max': float(described['max']),
            }
            if described is not None
            else {'count': 0}
        )
    min_ttcs = frame['min_ttc'].tolist() if len(frame) else []
    return {
        'n_events': int(len(frame)),
        'distributions': distributions,
        'ttc_shares': {str(k): v for k, v in ttc_bucket_shares(min_ttcs, thresholds).items()},
        'rejected_gaps': rejected_gap_buckets(frame['rejected_gaps'].tolist() if len(frame) else []),
    }


def summarize(
        scenes: Sequence['pclc.core.Scene'],
        thresholds: Optional[Sequence[float]] = None,
        workers: Optional[int] = None,
        debug: bool = False,
    ) -> BehaviorReport:
    """
    Summarize a batch of scenes.

    Parameters
    ----------
    scenes: Sequence[Scene]
        The events to summarize. Each is processed independently.

    thresholds: Optional[Sequence[float]], default None
        TTC thresholds for the bucket shares. Defaults to `analytics:ttc:thresholds`.

    Returns
    -------
    A `BehaviorReport` with one row per event and the aggregate.
    """
    from pclc.utils.packages import import_pandas
    from pclc.utils.pool import parallel_map
    from pclc.utils.warnings import warn
    pd = import_pandas()
    scenes = list(scenes)
    if not scenes:
        warn("No scenes to summarize.", stack=False)
    rows = parallel_map(lambda s: summarize_event(s, debug=debug).to_dict(), scenes, workers=workers)
    columns = list(BehaviorSummary.__dataclass_fields__)
    frame = pd.DataFrame(rows, columns=columns)
    return BehaviorReport(events=frame, aggregate=aggregate_summaries(frame, thresholds))
