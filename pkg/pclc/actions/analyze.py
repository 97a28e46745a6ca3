#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Summarize lane-change behavior over a directory of scenes.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def analyze(
        action: Optional[List[str]] = None,
        input: Optional[str] = None,
        out: Optional[str] = None,
        workers: Optional[int] = None,
        nopretty: bool = False,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Write per-event behavior statistics and their aggregate.

    Outputs `events.csv` (one row per scene: maneuver duration, speeds, minimum
    TTC, rejected gaps, yield labels) and `summary.json` (distributions, TTC
    threshold shares and rejected-gap buckets).

    Usage:
        `pclc analyze --in scenes/ --out report/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, start_manifest, close_manifest
    from pclc.analytics import summarize
    from pclc.core import Scene
    from pclc.simgen import list_scene_files
    from pclc.utils.pool import parallel_map
    from pclc.utils.formatting import print_table
    missing = missing_arguments({'input': input, 'out': out}, 'input', 'out')
    if missing:
        return missing
    paths = list_scene_files(input)
    if not paths:
        return False, f"No scene CSVs in '{input}'."
    scenes = parallel_map(Scene.read_csv, paths, workers=workers)
    report = summarize(scenes, workers=workers, debug=debug)

    out = pathlib.Path(out)
    manifest = start_manifest('analyze', {'n_scenes': len(scenes)}, input=input)
    for path in report.write(out):
        manifest.add_output(path.name, path)
    close_manifest(manifest, out)

    if not nopretty:
        shares = report.aggregate.get('ttc_shares', {})
        print_table(
            [{'min TTC below (s)': k, 'share of events': v} for k, v in shares.items()],
            title = f"{report.aggregate.get('n_events', 0)} events",
        )
    return True, f"Summarized {len(scenes)} scenes into '{out}'."
