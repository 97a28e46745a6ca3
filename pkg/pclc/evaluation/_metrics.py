#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Displacement errors and horizon truncation.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import List, Optional, Sequence, Tuple, Union


def displacement_errors(Y_hat, Y) -> np.ndarray:
    """
    Euclidean error per step, shape `(..., T)`.

    Raises
    ------
    `ShapeError` if the shapes differ or the last axis is not 2.
    """
    from pclc.numerics import ShapeError
    from pclc.utils.warnings import error
    Y_hat = np.asarray(Y_hat, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if Y_hat.shape != Y.shape or Y.ndim < 2 or Y.shape[-1] != 2:
        error(f"Trajectories must both have shape (..., T, 2), got {Y_hat.shape} and {Y.shape}.", ShapeError)
    return np.sqrt(np.sum((Y_hat - Y) ** 2, axis=-1))


def ade(Y_hat, Y) -> Union[float, np.ndarray]:
    """Average displacement error: the mean over steps of the Euclidean error."""
    out = displacement_errors(Y_hat, Y).mean(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def fde(Y_hat, Y) -> Union[float, np.ndarray]:
    """Final displacement error: the Euclidean error at the last step."""
    out = displacement_errors(Y_hat, Y)[..., -1]
    return float(out) if np.ndim(out) == 0 else out


def horizon_steps(horizons: Sequence[float], dt: float, t_pre: int) -> List[Tuple[float, int]]:
    """
    Map horizons in seconds to step counts, skipping (with a warning) those that
    are shorter than one step or longer than the prediction.
    """
    from pclc.utils.warnings import warn
    out = []
    for h in horizons:
        steps = int(round(float(h) / dt))
        if steps < 1 or steps > t_pre:
            warn(f"Skipping horizon {h} s: it needs {steps} steps but predictions have {t_pre}.", stack=False)
            continue
        out.append((float(h), steps))
    return out
