#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Continuous wavelet transform with the Mexican-hat (Ricker) wavelet.
"""

from __future__ import annotations
import math
import numpy as np
from pclc.utils.typing import Optional, Sequence

_NORM = 2.0 / (math.sqrt(3.0) * math.pi ** 0.25)


def mexican_hat(u: np.ndarray) -> np.ndarray:
    """Unit-energy negative second derivative of a Gaussian."""
    u = np.asarray(u, dtype=np.float64)
    return _NORM * (1.0 - u * u) * np.exp(-0.5 * u * u)


def wavelet_scales(preset: Optional[str] = None) -> np.ndarray:
    """
    Geometric scale grid (seconds) of a named preset in `analytics:wavelet:presets`.

    The default preset `fine` spans 0.15 to 0.4 s in 6 scales. This is narrower
    than the conventional 0.5 to 4 s grid of 8 scales, which is kept as the
    `coarse` preset: large scales spread the energy envelope by about one scale
    past the true maneuver boundaries and miss the half-second detection target.

    >>> wavelet_scales('coarse').round(2).tolist()
    [0.5, 0.67, 0.91, 1.22, 1.64, 2.21, 2.97, 4.0]
    """
    from pclc.config import get_config
    from pclc.utils.warnings import error
    cf = get_config('analytics', 'wavelet')
    if preset is None:
        preset = cf['preset']
    if preset not in cf['presets']:
        error(
            f"Unknown wavelet preset '{preset}'. Choose from {sorted(cf['presets'])}.",
            KeyError,
        )
    p = cf['presets'][preset]
    return np.geomspace(p['min_scale'], p['max_scale'], int(p['count']))


def _kernel(scale: float, dt: float, support: float) -> np.ndarray:
    """Trapezoid-weighted, zero-mean samples of `psi_s` on `[-support*s, support*s]`."""
    half = max(int(math.ceil(support * scale / dt)), 1)
    tau = np.arange(-half, half + 1) * dt
    weights = np.ones(tau.size)
    weights[0] = weights[-1] = 0.5
    kernel = mexican_hat(tau / scale) / math.sqrt(scale)
    ### Truncation breaks the zero mean; restore it under the same quadrature.
    kernel = kernel - np.sum(weights * kernel) / np.sum(weights)
    return weights * kernel * dt


def mexican_hat_cwt(
        signal: np.ndarray,
        scales: Optional[Sequence[float]] = None,
        dt: float = 0.1,
        support: Optional[float] = None,
    ) -> np.ndarray:
    """
    Compute `C(s, t) = integral signal(tau) psi_s(tau - t) dtau` on the sample grid.

    Parameters
    ----------
    signal: np.ndarray
        A uniformly sampled 1-D series.

    scales: Optional[Sequence[float]], default None
        Scales in seconds. Defaults to the configured preset.

    dt: float, default 0.1
        Sample spacing in seconds.

    support: Optional[float], default None
        Kernel half-width in scales. Defaults to `analytics:wavelet:support`.

    Returns
    -------
    An array `(len(scales), len(signal))` of coefficients.
    The borders are padded by point-symmetric reflection, so constants and
    linear trends produce zero coefficients everywhere.

    Raises
    ------
    `SignalTooShort` if the series covers fewer than `2 * max(scales) / dt` samples.
    """
    from pclc.utils.warnings import error
    from pclc.analytics._errors import SignalTooShort
    if scales is None:
        scales = wavelet_scales()
    if support is None:
        from pclc.config import get_config
        support = get_config('analytics', 'wavelet', 'support')
    scales = np.asarray(scales, dtype=np.float64)
    signal = np.asarray(signal, dtype=np.float64)
    if signal.ndim != 1:
        error(f"Expected a 1-D series, got shape {signal.shape}.", ValueError)
    if scales.size == 0 or np.any(scales <= 0.0):
        error(f"Scales must be positive, got {scales.tolist()}.", ValueError)
    needed = int(math.ceil(2.0 * scales.max() / dt))
    if signal.size < max(needed, 2):
        error(
            f"A series of {signal.size} samples is too short for scale {scales.max()} s "
            + f"(need at least {needed}).",
            SignalTooShort,
        )

    coefficients = np.empty((scales.size, signal.size))
    for i, s in enumerate(scales):
        kernel = _kernel(float(s), dt, support)
        half = kernel.size // 2
        padded = np.pad(signal, half, mode='reflect', reflect_type='odd')
        ### The kernel is symmetric, so correlation equals convolution.
        coefficients[i] = np.convolve(padded, kernel, mode='valid')
    return coefficients


def wavelet_energy(coefficients: np.ndarray) -> np.ndarray:
    """Mean squared coefficient across scales."""
    return np.mean(np.square(coefficients), axis=0)
