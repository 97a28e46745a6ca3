#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Generate synthetic post-crash lane-change scenarios.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def simgen(
        action: Optional[List[str]] = None,
        config: Optional[str] = None,
        out: Optional[str] = None,
        n: int = 1,
        seed: Optional[int] = None,
        workers: Optional[int] = None,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Generate `--n` scenarios into `--out`.

    Each scenario is written as a scene CSV with a geometry sidecar and a
    ground-truth JSON file. Scenario `i` is drawn with seed `seed + i`.

    Usage:
        `pclc simgen --config c.json --n 50 --seed 0 --out scenes/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, read_action_config, start_manifest, close_manifest
    from pclc.simgen import ScenarioConfig, generate_dataset, write_scenario
    from pclc.utils.warnings import info
    missing = missing_arguments({'out': out}, 'out')
    if missing:
        return missing
    cf = read_action_config(config, 'simgen')
    if seed is not None:
        cf['seed'] = seed
    scenario_config = ScenarioConfig(**cf)
    if n < 1:
        return False, f"--n must be at least 1, got {n}."

    out = pathlib.Path(out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = start_manifest(
        'simgen',
        {'scenario': scenario_config.to_dict(), 'n': n},
        seed = scenario_config.seed,
        config = config,
    )
    scenarios = generate_dataset(scenario_config, n=n, workers=workers, debug=debug)
    for scenario in scenarios:
        csv_path = write_scenario(scenario, out)
        for path in sorted(out.glob(csv_path.stem + '.*')):
            manifest.add_output(path.name, path)
    manifest_path = close_manifest(manifest, out)
    if debug:
        info(f"Manifest hash: {manifest.hash}")
    return True, f"Generated {len(scenarios)} scenarios in '{out}' (manifest '{manifest_path}', hash {manifest.hash[:12]})."
