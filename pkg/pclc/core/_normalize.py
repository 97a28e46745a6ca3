#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Affine feature normalization fitted on training windows.

Longitudinal positions are first expressed relative to the lane changer's last
observed position (the window anchor), then every feature is standardized with
statistics shared across the five vehicles.
"""

from __future__ import annotations
from dataclasses import dataclass
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, Sequence, Tuple
from pclc.core._window import Window

### Index of `x_lon` in the model feature order.
_X_FEATURE = 1


@dataclass(frozen=True, eq=False)
class NormStats:
    """Per-feature means and standard deviations for `X` (5) and `Y` (2)."""
    x_mean: np.ndarray
    x_std: np.ndarray
    y_mean: np.ndarray
    y_std: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        return {k: getattr(self, k).tolist() for k in ('x_mean', 'x_std', 'y_mean', 'y_std')}

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> 'NormStats':
        return cls(**{k: np.asarray(d[k], dtype=np.float64) for k in ('x_mean', 'x_std', 'y_mean', 'y_std')})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormStats):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ('x_mean', 'x_std', 'y_mean', 'y_std')
        )


def _anchor_of(window: Window) -> float:
    return float(window.X[-1, 0, _X_FEATURE])


def _anchored(window: Window, anchor: float) -> Tuple[np.ndarray, np.ndarray]:
    X = window.X.copy()
    X[..., _X_FEATURE] -= anchor
    Y = window.Y.copy()
    Y[:, 0] -= anchor
    return X, Y


def _safe_std(var: np.ndarray, floor: float, names: Sequence[str]) -> np.ndarray:
    clamped = var < floor
    if np.any(clamped):
        from pclc.utils.warnings import warn
        bad = [n for n, c in zip(names, clamped) if c]
        warn(f"Zero-variance features {bad}; variance clamped to {floor}.", stack=False)
    return np.sqrt(np.maximum(var, floor))


def fit_stats(windows: Sequence[Window], variance_floor: Optional[float] = None) -> NormStats:
    """
    Compute normalization statistics on (raw) training windows.
    """
    from pclc.utils.warnings import error
    from pclc.core._roles import FEATURE_COLUMNS
    if not windows:
        error("Cannot fit normalization statistics on an empty window set.", ValueError)
    if any(w.normalized for w in windows):
        error("Cannot fit normalization statistics on normalized windows.", ValueError)
    if variance_floor is None:
        from pclc.config import get_config
        variance_floor = get_config('windows', 'variance_floor')
    Xs, Ys = zip(*(_anchored(w, _anchor_of(w)) for w in windows))
    X = np.stack(Xs).reshape(-1, len(FEATURE_COLUMNS))
    Y = np.stack(Ys).reshape(-1, 2)
    return NormStats(
        x_mean = X.mean(axis=0),
        x_std = _safe_std(X.var(axis=0), variance_floor, FEATURE_COLUMNS),
        y_mean = Y.mean(axis=0),
        y_std = _safe_std(Y.var(axis=0), variance_floor, ('x_lon', 'y_lat')),
    )


def normalize(
        windows: Sequence[Window],
        stats: Optional[NormStats] = None,
        variance_floor: Optional[float] = None,
    ) -> Tuple[List[Window], NormStats]:
    """
    Normalize windows, fitting statistics on them first if `stats` is omitted.

    Returns
    -------
    A tuple of the normalized windows and the statistics used.
    """
    if stats is None:
        stats = fit_stats(windows, variance_floor=variance_floor)
    out = []
    for w in windows:
        if w.normalized:
            out.append(w)
            continue
        anchor = _anchor_of(w)
        X, Y = _anchored(w, anchor)
        out.append(w.with_arrays(
            X = (X - stats.x_mean) / stats.x_std,
            Y = (Y - stats.y_mean) / stats.y_std,
            anchor = anchor,
            normalized = True,
        ))
    return out, stats


def denormalize_trajectory(Y: np.ndarray, anchor: float, stats: NormStats) -> np.ndarray:
    """Map normalized `(..., T_pre, 2)` positions back to meters."""
    out = np.asarray(Y, dtype=np.float64) * stats.y_std + stats.y_mean
    out[..., 0] += anchor
    return out


def denormalize(windows: Sequence[Window], stats: NormStats) -> List[Window]:
    """Invert `normalize()`."""
    out = []
    for w in windows:
        if not w.normalized:
            out.append(w)
            continue
        X = w.X * stats.x_std + stats.x_mean
        X[..., _X_FEATURE] += w.anchor
        out.append(w.with_arrays(
            X = X,
            Y = denormalize_trajectory(w.Y, w.anchor, stats),
            anchor = 0.0,
            normalized = False,
        ))
    return out
