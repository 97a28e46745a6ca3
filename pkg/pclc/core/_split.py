#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Event-level train/test splits.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import numpy as np
from pclc.utils.typing import Any, Dict, List, Sequence, Tuple
from pclc.core._window import Window


@dataclass
class DatasetSplit:
    """Disjoint train and test windows; every event lands on one side only."""
    train: List[Window]
    test: List[Window]
    seed: int = 0
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def train_events(self) -> List[str]:
        return sorted({w.event_id for w in self.train})

    @property
    def test_events(self) -> List[str]:
        return sorted({w.event_id for w in self.test})

    def __repr__(self) -> str:
        return (
            f"DatasetSplit(train={len(self.train)} windows / {len(self.train_events)} events, "
            + f"test={len(self.test)} windows / {len(self.test_events)} events, seed={self.seed})"
        )


def split_event_ids(
        event_ids: Sequence[str],
        fraction: float = 0.7,
        seed: int = 0,
    ) -> Tuple[List[str], List[str]]:
    """
    Shuffle unique event ids with a seeded generator and cut at `fraction`.
    Both sides keep at least one event when there are two or more.
    """
    from pclc.utils.warnings import error
    if not 0.0 < fraction < 1.0:
        error(f"Split fraction must be in (0, 1), got {fraction}.", ValueError)
    unique = sorted(set(event_ids))
    order = np.random.default_rng(seed).permutation(len(unique))
    shuffled = [unique[i] for i in order]
    n_first = int(round(fraction * len(shuffled)))
    if len(shuffled) >= 2:
        n_first = min(max(n_first, 1), len(shuffled) - 1)
    return sorted(shuffled[:n_first]), sorted(shuffled[n_first:])


def split_windows(
        windows: Sequence[Window],
        fraction: float = 0.7,
        seed: int = 0,
    ) -> DatasetSplit:
    """Split windows 70/30 (by default) at the event level."""
    train_ids, _ = split_event_ids([w.event_id for w in windows], fraction=fraction, seed=seed)
    train_ids = set(train_ids)
    return DatasetSplit(
        train = [w for w in windows if w.event_id in train_ids],
        test = [w for w in windows if w.event_id not in train_ids],
        seed = seed,
        meta = {'fraction': fraction},
    )
