#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Score a checkpoint on the test windows of a split.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def evaluate(
        action: Optional[List[str]] = None,
        ckpt: Optional[str] = None,
        data: Optional[str] = None,
        out: Optional[str] = None,
        k: Optional[int] = None,
        horizons: Optional[List[float]] = None,
        seed: Optional[int] = None,
        nopretty: bool = False,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Compute ADE, FDE and the false-crash rate per horizon, the constant-velocity
    baseline, and the TTC-bucket deviation, and write the report into `--out`.

    Usage:
        `pclc eval --ckpt ckpt/ --data ds/ --k 20 --horizons 1,2,3,4,5 --out eval/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, start_manifest, close_manifest
    from pclc.core import load_split
    from pclc.model import load_checkpoint
    from pclc.evaluation import evaluate as evaluate_checkpoint
    from pclc.utils.formatting import print_table
    missing = missing_arguments({'ckpt': ckpt, 'data': data, 'out': out}, 'ckpt', 'data', 'out')
    if missing:
        return missing

    checkpoint = load_checkpoint(ckpt)
    dataset = load_split(data)
    if not dataset.test:
        return False, f"The split in '{data}' has no test windows."
    report = evaluate_checkpoint(checkpoint, dataset.test, k=k, horizons=horizons, seed=seed, debug=debug)

    out = pathlib.Path(out)
    manifest = start_manifest(
        'evaluate',
        {'k': report.k, 'horizons': report.horizons, 'variant': report.variant},
        seed = report.seed,
        ckpt = ckpt,
        data = data,
    )
    for path in report.write(out):
        manifest.add_output(path.name, path)
    close_manifest(manifest, out)

    print(report.header())
    if not nopretty:
        print_table(report.metrics, columns=['horizon', 'steps', 'ade', 'fde', 'false_crash_rate'])
    return True, f"{report.header()}; report written to '{out}'."
