#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Cut scenes into windows and split them by event.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def windows(
        action: Optional[List[str]] = None,
        input: Optional[str] = None,
        out: Optional[str] = None,
        config: Optional[str] = None,
        t_obs: Optional[int] = None,
        t_pre: Optional[int] = None,
        step_s: Optional[float] = None,
        split: Optional[float] = None,
        seed: Optional[int] = None,
        workers: Optional[int] = None,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Build a train/test window split from the scene CSVs in `--in`.

    Yield labels are reconstructed from the trajectories. The split is made at
    the event level, so no event contributes windows to both parts. The
    normalization statistics of the training windows are stored alongside.

    Usage:
        `pclc windows --in scenes/ --t-obs 10 --t-pre 50 --step 0.5 --split 0.7 --seed 0 --out ds/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, read_action_config, start_manifest, close_manifest
    from pclc.config import get_config
    from pclc.config.static import STATIC_CONFIG
    from pclc.core import Scene, build_windows, split_windows, fit_stats, save_split
    from pclc.simgen import list_scene_files
    from pclc.utils.pool import parallel_map
    missing = missing_arguments({'input': input, 'out': out}, 'input', 'out')
    if missing:
        return missing

    cf = dict(get_config('windows'))
    cf.update(read_action_config(config, 'windows'))
    overrides = {'t_obs': t_obs, 't_pre': t_pre, 'step_s': step_s, 'split': split, 'seed': seed}
    cf.update({k: v for k, v in overrides.items() if v is not None})

    paths = list_scene_files(input)
    if not paths:
        return False, f"No scene CSVs in '{input}'."
    scenes = parallel_map(Scene.read_csv, paths, workers=workers)
    per_scene = [
        build_windows(scene, t_obs=cf['t_obs'], t_pre=cf['t_pre'], step_s=cf['step_s'], debug=debug)
        for scene in scenes
    ]
    all_windows = [w for ws in per_scene for w in ws]
    if not all_windows:
        return False, f"No scene in '{input}' is long enough for T_obs={cf['t_obs']}, T_pre={cf['t_pre']}."

    dataset = split_windows(all_windows, fraction=cf['split'], seed=cf['seed'])
    if not dataset.train:
        return False, "The split left no training windows."
    stats = fit_stats(dataset.train)

    out = pathlib.Path(out)
    manifest = start_manifest(
        'windows',
        {k: cf[k] for k in ('t_obs', 't_pre', 'step_s', 'split', 'seed')},
        seed = cf['seed'],
        input = input,
        config = config,
    )
    written = save_split(dataset, out, extra={'norm_stats': stats.to_dict()})
    for name, path in written.items():
        manifest.add_output(name, path)
    close_manifest(manifest, out)
    return True, (
        f"Wrote {len(dataset.train)} training and {len(dataset.test)} test windows "
        + f"from {len(scenes)} scenes to '{out / STATIC_CONFIG['files']['windows']}'."
    )
