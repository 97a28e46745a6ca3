#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Locate the start and end of a lane change in a lateral-position series.
"""

from __future__ import annotations
from dataclasses import dataclass
import numpy as np
from pclc.utils.typing import Optional, Sequence


@dataclass(frozen=True)
class LCBoundary:
    """Maneuver start and end times (seconds, on the scene grid)."""
    t_start: float
    t_end: float

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError(f"Boundary start {self.t_start} must precede end {self.t_end}.")

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def to_dict(self):
        return {'t_start': self.t_start, 't_end': self.t_end}


def detect_lc_boundaries(
        lateral_series: np.ndarray,
        dt: float = 0.1,
        scales: Optional[Sequence[float]] = None,
        threshold: Optional[float] = None,
        energy_floor: Optional[float] = None,
        debug: bool = False,
    ) -> LCBoundary:
    """
    Detect the lane-change interval from the wavelet energy of the lateral position.

    The energy envelope (mean squared coefficient across scales) is compared with
    `threshold * peak`. The maneuver spans from one step before the first sample
    above that level to one step after the last one.

    Parameters
    ----------
    lateral_series: np.ndarray
        Lateral position of the lane changer, sampled every `dt` seconds.

    threshold: Optional[float], default None
        Fraction of the peak energy. Defaults to `analytics:wavelet:threshold`.

    energy_floor: Optional[float], default None
        Absolute peak energy below which no lane change is reported.

    Raises
    ------
    `NoLaneChangeDetected` if the peak energy is below `energy_floor`.
    """
    from pclc.config import get_config
    from pclc.utils.warnings import error
    from pclc.analytics._errors import NoLaneChangeDetected
    from pclc.analytics._wavelet import mexican_hat_cwt, wavelet_energy
    cf = get_config('analytics', 'wavelet')
    if threshold is None:
        threshold = cf['threshold']
    if energy_floor is None:
        energy_floor = cf['energy_floor']

    series = np.asarray(lateral_series, dtype=np.float64)
    energy = wavelet_energy(mexican_hat_cwt(series, scales, dt=dt))
    peak = float(np.max(energy))
    if not peak >= energy_floor:
        error(
            f"No lane change detected (peak wavelet energy {peak:.3g} "
            + f"is below the floor {energy_floor:.3g}).",
            NoLaneChangeDetected,
        )
    above = np.flatnonzero(energy >= threshold * peak)
    first = max(int(above[0]) - 1, 0)
    last = min(int(above[-1]) + 1, series.size - 1)
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Wavelet energy peak {peak:.4g} at step {int(np.argmax(energy))}; region [{first}, {last}].")
    return LCBoundary(t_start=first * dt, t_end=last * dt)


def detect_scene_boundaries(scene, **kw) -> LCBoundary:
    """Run `detect_lc_boundaries` on the lane changer's lateral offset from its original lane."""
    from pclc.core._roles import Role, Y_LAT
    lateral = scene.states[:, int(Role.LANE_CHANGER), Y_LAT] - scene.lane_centers[0]
    return detect_lc_boundaries(lateral, dt=scene.dt, **kw)
