#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Oriented rectangular footprints and separating-axis overlap tests.

For a rectangle with unit axes `u` (heading) and `v` (left normal), the support
radius along a unit direction `n` is `L/2 |n.u| + W/2 |n.v|`. Two rectangles are
disjoint iff some axis among `u_a, v_a, u_b, v_b` separates their projections.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
import numpy as np
from pclc.utils.typing import Tuple


@dataclass(frozen=True)
class OrientedBox:
    """A vehicle footprint: center, heading (rad), length and width (m)."""
    x: float
    y: float
    heading: float
    length: float
    width: float

    def __post_init__(self):
        if not (self.length > 0 and self.width > 0):
            from pclc.utils.warnings import error
            error(f"Box dimensions must be positive, got {self.length} x {self.width}.", ValueError)

    @property
    def center(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.heading), math.sin(self.heading)
        return np.array([c, s]), np.array([-s, c])

    def corners(self) -> np.ndarray:
        """Return the four corners counter-clockwise, starting front-left."""
        u, v = self.axes()
        hl, hw = self.length / 2.0, self.width / 2.0
        c = self.center
        return np.array([c + hl * u + hw * v, c - hl * u + hw * v, c - hl * u - hw * v, c + hl * u - hw * v])

    def support(self, n: np.ndarray) -> float:
        u, v = self.axes()
        return self.length / 2.0 * abs(float(n @ u)) + self.width / 2.0 * abs(float(n @ v))

    def translated(self, dx: float, dy: float) -> 'OrientedBox':
        return OrientedBox(self.x + dx, self.y + dy, self.heading, self.length, self.width)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.heading, self.length, self.width])


def _axes(heading: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(heading), np.sin(heading)
    return np.stack([c, s], axis=-1), np.stack([-s, c], axis=-1)


def _support(n: np.ndarray, u: np.ndarray, v: np.ndarray, length, width) -> np.ndarray:
    return (
        0.5 * length * np.abs(np.sum(n * u, axis=-1))
        + 0.5 * width * np.abs(np.sum(n * v, axis=-1))
    )


def separating_slabs(boxes_a: np.ndarray, boxes_b: np.ndarray):
    """
    Return the four candidate axes and the combined support radii for box pairs.

    Parameters
    ----------
    boxes_a, boxes_b: np.ndarray
        Arrays of shape `(..., 5)` holding `[x, y, heading, length, width]`.

    Returns
    -------
    A tuple `(normals, radii)` of shapes `(..., 4, 2)` and `(..., 4)`.
    """
    ua, va = _axes(boxes_a[..., 2])
    ub, vb = _axes(boxes_b[..., 2])
    normals = np.stack([ua, va, ub, vb], axis=-2)
    la, wa = boxes_a[..., 3:4], boxes_a[..., 4:5]
    lb, wb = boxes_b[..., 3:4], boxes_b[..., 4:5]
    radii = (
        _support(normals, ua[..., None, :], va[..., None, :], la, wa)
        + _support(normals, ub[..., None, :], vb[..., None, :], lb, wb)
    )
    return normals, radii


def overlap_batch(boxes_a: np.ndarray, boxes_b: np.ndarray, margin: float = 0.0) -> np.ndarray:
    """
    Vectorized separating-axis test. Touching boxes do not overlap.

    Parameters
    ----------
    boxes_a, boxes_b: np.ndarray
        Broadcastable arrays of shape `(..., 5)`.

    margin: float, default 0.0
        Extra clearance required along every axis (positive shrinks the overlap region).

    Returns
    -------
    A boolean array of shape `(...)`.
    """
    boxes_a = np.asarray(boxes_a, dtype=np.float64)
    boxes_b = np.asarray(boxes_b, dtype=np.float64)
    boxes_a, boxes_b = np.broadcast_arrays(boxes_a, boxes_b)
    normals, radii = separating_slabs(boxes_a, boxes_b)
    d = (boxes_b[..., :2] - boxes_a[..., :2])[..., None, :]
    dist = np.abs(np.sum(normals * d, axis=-1))
    return np.all(dist < radii - margin, axis=-1)


def boxes_overlap(a: OrientedBox, b: OrientedBox) -> bool:
    """Return `True` if the interiors of two footprints intersect."""
    return bool(overlap_batch(a.as_array(), b.as_array()))
