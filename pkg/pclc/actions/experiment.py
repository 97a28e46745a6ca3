#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Run the ablation comparison end to end.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def experiment(
        action: Optional[List[str]] = None,
        out: Optional[str] = None,
        config: Optional[str] = None,
        n: Optional[int] = None,
        seed: Optional[int] = None,
        epochs: Optional[int] = None,
        k: Optional[int] = None,
        horizons: Optional[List[float]] = None,
        workers: Optional[int] = None,
        nopretty: bool = False,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Train every configured variant once per seed on synthetic scenes with mixed
    yield probabilities, evaluate each run on held-out scenes, and write the
    seed-mean table `ablation.csv` and the directional checks `ablation.json`.

    `--n` sets the number of held-out scenes and `--seed` the first scenario seed.
    Everything else comes from the `experiment` section of `--config` or the configuration.

    Usage:
        `pclc experiment --n 300 --seed 100000 --out ablation/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, read_action_config, start_manifest, close_manifest
    from pclc.evaluation import ExperimentConfig, run_ablation
    from pclc.utils.formatting import print_table
    missing = missing_arguments({'out': out}, 'out')
    if missing:
        return missing

    cf = read_action_config(config, 'experiment')
    overrides = {'test_scenes': n, 'scenario_seed': seed, 'k': k, 'horizons': horizons}
    cf.update({key: v for key, v in overrides.items() if v is not None})
    if epochs is not None:
        cf['train'] = {**cf.get('train', {}), 'epochs': epochs}
    experiment_config = ExperimentConfig(**cf)

    result = run_ablation(experiment_config, workers=workers, debug=debug)

    out = pathlib.Path(out)
    manifest = start_manifest(
        'experiment',
        experiment_config.to_dict(),
        seed = experiment_config.scenario_seed,
        config = config,
    )
    for path in result.write(out):
        manifest.add_output(str(path.relative_to(out)), path)
    close_manifest(manifest, out)

    checks = result.directional_checks()
    if not nopretty:
        print_table(result.summary.to_dict(orient='records'), title='Ablation')
        print_table([{'check': name, 'holds': holds} for name, holds in checks.items()], title='Checks')
    held = sum(checks.values())
    return True, f"Ablation written to '{out}': {held} of {len(checks)} directional checks hold."
