#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Ground truth attached to generated scenarios.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional
from pclc.analytics._gaps import GapEvent


@dataclass
class ScenarioTruth:
    """What the generator knows about a scenario."""
    lc_start: float
    lc_end: float
    final_gap_index: int
    rejected_gaps: int
    labels: np.ndarray
    gaps: List[GapEvent] = field(default_factory=list)
    yield_flags: Dict[int, bool] = field(default_factory=dict)
    seed: int = 0
    attempt: int = 0

    def to_dict(self) -> Dict[str, Any]:
        from pclc.config.static import STATIC_CONFIG
        return {
            'format': STATIC_CONFIG['formats']['scene'],
            'lc_start': self.lc_start,
            'lc_end': self.lc_end,
            'final_gap_index': self.final_gap_index,
            'rejected_gaps': self.rejected_gaps,
            'labels': [int(v) for v in self.labels],
            'gaps': [g.to_dict() for g in self.gaps],
            'yield_flags': {str(k): bool(v) for k, v in sorted(self.yield_flags.items())},
            'seed': self.seed,
            'attempt': self.attempt,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> 'ScenarioTruth':
        return cls(
            lc_start = float(d['lc_start']),
            lc_end = float(d['lc_end']),
            final_gap_index = int(d['final_gap_index']),
            rejected_gaps = int(d['rejected_gaps']),
            labels = np.asarray(d['labels'], dtype=np.int64),
            gaps = [GapEvent(**g) for g in d.get('gaps', [])],
            yield_flags = {int(k): bool(v) for k, v in d.get('yield_flags', {}).items()},
            seed = int(d.get('seed', 0)),
            attempt = int(d.get('attempt', 0)),
        )


@dataclass
class GeneratedScenario:
    """A scene with its generator ground truth."""
    scene: 'pclc.core.Scene'
    truth: ScenarioTruth
    config: Optional['pclc.simgen.ScenarioConfig'] = None

    @property
    def event_id(self) -> str:
        return self.scene.event_id

    def non_yield_proportion(self) -> float:
        """Share of maneuver steps (lane-change start to end) labeled non-yielding."""
        dt = self.scene.dt
        start = int(round(self.truth.lc_start / dt))
        end = min(int(round(self.truth.lc_end / dt)), self.scene.n_steps - 1)
        span = self.truth.labels[start:end + 1]
        return float(np.count_nonzero(span == 0)) / span.size if span.size else 0.0

    def __repr__(self) -> str:
        return (
            f"GeneratedScenario('{self.event_id}', rejected_gaps={self.truth.rejected_gaps}, "
            + f"lc=[{self.truth.lc_start:.1f}, {self.truth.lc_end:.1f}] s)"
        )
