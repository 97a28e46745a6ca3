#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Draw trajectory samples in meters from a trained network or a baseline.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import List, Optional, Sequence, Tuple, Union
from pclc.core._roles import Role, X_LON, Y_LAT

ModelLike = Union['pclc.model.TrajectoryModel', 'pclc.model.Checkpoint']


def _unpack(model: ModelLike, stats):
    from pclc.model import Checkpoint
    if isinstance(model, Checkpoint):
        return model.model, (stats if stats is not None else model.stats)
    return model, stats


def _normalized(windows, stats) -> List['pclc.core.Window']:
    from pclc.core import normalize
    from pclc.utils.warnings import error
    if all(w.normalized for w in windows):
        if stats is None:
            error("Normalization statistics are needed to express predictions in meters.", ValueError)
        return list(windows)
    if stats is None:
        error("Raw windows need normalization statistics before they can be fed to a model.", ValueError)
    return normalize(windows, stats)[0]


def sample_trajectories(
        model: ModelLike,
        windows: Sequence['pclc.core.Window'],
        k: Optional[int] = None,
        seed: Optional[int] = None,
        stats: Optional['pclc.core.NormStats'] = None,
        mean_latent: bool = False,
        batch_size: int = 256,
        debug: bool = False,
    ) -> np.ndarray:
    """
    Predict `k` lane-changer trajectories for every window.

    Window `i` draws its latent noise from its own stream seeded with `(seed, i)`,
    so results do not depend on batching.

    Parameters
    ----------
    model: Union[TrajectoryModel, Checkpoint]
        The network; a checkpoint also provides the statistics.

    windows: Sequence[Window]
        Raw or normalized windows.

    k: Optional[int], default None
        Samples per window. Defaults to `evaluation:k`.

    seed: Optional[int], default None
        Seed of the noise streams. Defaults to `evaluation:seed`.

    mean_latent: bool, default False
        Decode the latent mean instead of sampling (a single pass repeated `k` times).

    Returns
    -------
    An array `(k, N, T_pre, 2)` of `(x_lon, y_lat)` positions in meters.
    """
    from pclc.config import get_config
    from pclc.core import denormalize_trajectory
    from pclc.numerics import no_grad
    from pclc.utils.packages import attempt_import
    more_itertools = attempt_import('more_itertools')
    if k is None:
        k = get_config('evaluation', 'k')
    if seed is None:
        seed = get_config('evaluation', 'seed')
    if k < 1:
        from pclc.utils.warnings import error
        error(f"Need at least one sample per window, got k={k}.", ValueError)
    net, stats = _unpack(model, stats)
    windows = _normalized(list(windows), stats)
    n, t_pre = len(windows), net.config.t_pre
    if n == 0:
        return np.zeros((k, 0, t_pre, 2))
    X = np.stack([w.X for w in windows])

    stochastic = net.stochastic and not mean_latent
    passes = k if stochastic else 1
    eps = None
    if stochastic:
        d_z = net.config.d_z
        eps = np.stack([
            np.random.default_rng([seed, i]).standard_normal((k, d_z))
            for i in range(n)
        ])

    out = np.empty((passes, n, t_pre, 2))
    with no_grad():
        for j in range(passes):
            for idx in more_itertools.chunked(range(n), batch_size):
                idx = np.asarray(idx)
                batch_eps = eps[idx, j] if eps is not None else None
                out[j, idx] = net.forward(X[idx], eps=batch_eps).Y_hat.values
    for i, w in enumerate(windows):
        out[:, i] = denormalize_trajectory(out[:, i], w.anchor, stats)
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Sampled {passes} pass(es) for {n} windows with {net}.")
    return out if passes == k else np.repeat(out, k, axis=0)


def true_future(window: 'pclc.core.Window') -> np.ndarray:
    """The lane changer's true future `(T_pre, 2)` in meters."""
    return window.future[:, int(Role.LANE_CHANGER), [X_LON, Y_LAT]].copy()


def evaluate_stochastic(
        model: ModelLike,
        window: 'pclc.core.Window',
        k: Optional[int] = None,
        seed: Optional[int] = None,
        stats: Optional['pclc.core.NormStats'] = None,
    ) -> Tuple[float, float, np.ndarray]:
    """
    Average ADE and FDE over `k` independent predictions for one window.

    Returns
    -------
    A tuple `(mean ADE, mean FDE, trajectories)` with trajectories of shape `(k, T_pre, 2)`.
    """
    from pclc.evaluation._metrics import ade, fde
    samples = sample_trajectories(model, [window], k=k, seed=seed, stats=stats)[:, 0]
    truth = np.broadcast_to(true_future(window), samples.shape)
    return float(np.mean(ade(samples, truth))), float(np.mean(fde(samples, truth))), samples


def _observed_positions(window, stats) -> np.ndarray:
    """Lane-changer history `(T_obs, 2)` as `(x_lon, y_lat)` in meters."""
    from pclc.core import denormalize
    from pclc.core._normalize import _X_FEATURE
    if window.normalized:
        if stats is None:
            from pclc.utils.warnings import error
            error("A normalized window needs its statistics to recover positions.", ValueError)
        window = denormalize([window], stats)[0]
    lc = window.X[:, int(Role.LANE_CHANGER), :]
    ### Window features are `[y_lat, x_lon, ...]`.
    return np.stack([lc[:, _X_FEATURE], lc[:, 0]], axis=-1)


def constant_velocity(window: 'pclc.core.Window', stats: Optional['pclc.core.NormStats'] = None) -> np.ndarray:
    """
    Extrapolate the lane changer's last observed velocity over the prediction horizon.

    Returns
    -------
    An array `(T_pre, 2)` in meters.
    """
    p = _observed_positions(window, stats)
    v = (p[-1] - p[-2]) / window.dt if p.shape[0] >= 2 else np.zeros(2)
    steps = np.arange(1, window.t_pre + 1, dtype=np.float64)[:, None]
    return p[-1] + steps * window.dt * v


def constant_velocity_samples(windows, k: int = 1, stats=None) -> np.ndarray:
    """`constant_velocity` for every window, repeated `k` times: `(k, N, T_pre, 2)`."""
    if not windows:
        return np.zeros((k, 0, 0, 2))
    cv = np.stack([constant_velocity(w, stats) for w in windows])
    return np.repeat(cv[None], k, axis=0)


def recurrent_seq2seq(
        checkpoint: 'pclc.model.Checkpoint',
        windows: Sequence['pclc.core.Window'],
    ) -> np.ndarray:
    """
    Predictions `(N, T_pre, 2)` in meters of a trained recurrent encoder-decoder.

    Raises
    ------
    `ValueError` if the checkpoint holds a different variant.
    """
    from pclc.model import Variant
    if checkpoint.model.variant is not Variant.SEQ2SEQ:
        from pclc.utils.warnings import error
        error(f"Expected a {Variant.SEQ2SEQ.value} checkpoint, got {checkpoint.variant}.", ValueError)
    return sample_trajectories(checkpoint, windows, k=1)[0]
