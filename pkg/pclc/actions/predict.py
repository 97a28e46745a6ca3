#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Predict trajectories for a single window.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List

PREDICTION_COLUMNS = ('sample', 'step', 't', 'x', 'y')


def predict(
        action: Optional[List[str]] = None,
        ckpt: Optional[str] = None,
        window: Optional[str] = None,
        out: Optional[str] = None,
        k: Optional[int] = None,
        seed: Optional[int] = None,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Draw `--k` lane-changer trajectories for the window in `--window` (JSON)
    and write them as a CSV with columns `sample,step,t,x,y` (meters).

    Usage:
        `pclc predict --ckpt ckpt/ --window w.json --k 20 --out traj.csv`
    """
    import pathlib
    import numpy as np
    from pclc.actions._common import missing_arguments, start_manifest, close_manifest
    from pclc.core import Window
    from pclc.model import load_checkpoint
    from pclc.evaluation import sample_trajectories
    from pclc.utils.packages import import_pandas
    missing = missing_arguments({'ckpt': ckpt, 'window': window, 'out': out}, 'ckpt', 'window', 'out')
    if missing:
        return missing
    pd = import_pandas()

    checkpoint = load_checkpoint(ckpt)
    w = Window.read_json(window)
    samples = sample_trajectories(checkpoint, [w], k=k, seed=seed, debug=debug)[:, 0]
    n_samples, t_pre = samples.shape[:2]
    steps = np.arange(1, t_pre + 1)
    frame = pd.DataFrame({
        'sample': np.repeat(np.arange(n_samples), t_pre),
        'step': np.tile(steps, n_samples),
        't': np.tile(steps * w.dt, n_samples),
        'x': samples[..., 0].ravel(),
        'y': samples[..., 1].ravel(),
    }, columns=list(PREDICTION_COLUMNS))

    out = pathlib.Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, float_format='%.17g')
    manifest = start_manifest(
        'predict',
        {'k': n_samples, 'variant': checkpoint.variant},
        seed = seed,
        ckpt = ckpt,
        window = window,
    )
    manifest.add_output('predictions', out)
    close_manifest(manifest, out)
    return True, f"Wrote {n_samples} predicted trajectories of {t_pre} steps to '{out}'."
