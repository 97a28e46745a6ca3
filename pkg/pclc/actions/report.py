#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Compare evaluation reports side by side.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def report(
        action: Optional[List[str]] = None,
        eval_dirs: Optional[List[str]] = None,
        out: Optional[str] = None,
        nopretty: bool = False,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Write `comparison.csv`: one row per (report, horizon) with ADE, FDE, the
    false-crash rate, and the ADE improvement over the first listed report.

    Usage:
        `pclc report --eval eval_cvae/ eval_cit/ --out cmp/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, start_manifest, close_manifest
    from pclc.config.static import STATIC_CONFIG
    from pclc.evaluation import read_report, compare_reports
    from pclc.utils.formatting import print_table
    missing = missing_arguments({'eval_dirs': eval_dirs, 'out': out}, 'eval_dirs', 'out')
    if missing:
        return missing

    reports = [read_report(d) for d in eval_dirs]
    labels = [pathlib.Path(d).name or str(d) for d in eval_dirs]
    if len(set(labels)) != len(labels):
        labels = [str(d) for d in eval_dirs]
    table = compare_reports(reports, labels=labels)

    out = pathlib.Path(out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / STATIC_CONFIG['files']['comparison']
    table.to_csv(path, index=False, float_format='%.17g')
    manifest = start_manifest('report', {'labels': labels}, eval=list(eval_dirs))
    manifest.add_output('comparison', path)
    close_manifest(manifest, out)

    if not nopretty:
        print_table(table.to_dict(orient='records'), title='Comparison')
    return True, f"Compared {len(reports)} reports into '{path}'."
