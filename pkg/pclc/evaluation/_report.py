#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Assemble, persist, and compare evaluation reports.
"""

from __future__ import annotations
import json
import math
import pathlib
from dataclasses import dataclass, field
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, PathLike, Sequence


@dataclass
class EvalReport:
    """
    Metrics of one network on one test set.

    Attributes
    ----------
    metrics: List[Dict[str, float]]
        One row per horizon: `horizon`, `steps`, `ade`, `fde`, `false_crash_rate`.

    baselines: Dict[str, List[Dict[str, float]]]
        The same rows for each baseline (e.g. `constant_velocity`).

    ttc_deviation: Dict[str, Dict[str, int]]
        `{horizon: {bucket: |true - predicted|}}` with horizons as strings.

    per_sample_ade: List[float]
        Mean-over-k ADE of every window at the longest horizon.
    """
    variant: str
    k: int
    seed: int
    n_windows: int
    metrics: List[Dict[str, float]] = field(default_factory=list)
    baselines: Dict[str, List[Dict[str, float]]] = field(default_factory=dict)
    ttc_deviation: Dict[str, Dict[str, int]] = field(default_factory=dict)
    per_sample_ade: List[float] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        from pclc.utils.warnings import error
        for row in self.metrics:
            if row['ade'] < 0 or row['fde'] < 0:
                error(f"Displacement errors must be non-negative, got {row}.", ValueError)
            if not 0.0 <= row['false_crash_rate'] <= 1.0:
                error(f"False crash rate must be in [0, 1], got {row['false_crash_rate']}.", ValueError)

    @property
    def horizons(self) -> List[float]:
        return [row['horizon'] for row in self.metrics]

    def row(self, horizon: float) -> Dict[str, float]:
        for row in self.metrics:
            if math.isclose(row['horizon'], horizon):
                return row
        raise KeyError(f"No metrics for horizon {horizon} s.")

    def header(self) -> str:
        return f"Evaluation of {self.variant} on {self.n_windows} windows (k={self.k}, seed={self.seed})"

    def to_dict(self) -> Dict[str, Any]:
        from pclc.config.static import STATIC_CONFIG
        return {
            'format': STATIC_CONFIG['formats']['eval'],
            'variant': self.variant,
            'k': self.k,
            'seed': self.seed,
            'n_windows': self.n_windows,
            'metrics': self.metrics,
            'baselines': self.baselines,
            'ttc_deviation': self.ttc_deviation,
            'per_sample_ade': self.per_sample_ade,
            'meta': self.meta,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> 'EvalReport':
        return cls(**{k: d[k] for k in (
            'variant', 'k', 'seed', 'n_windows', 'metrics', 'baselines',
            'ttc_deviation', 'per_sample_ade', 'meta',
        ) if k in d})

    def metrics_frame(self) -> 'pd.DataFrame':
        """One row per horizon with the model's and baselines' ADE/FDE side by side."""
        from pclc.utils.packages import import_pandas
        pd = import_pandas()
        df = pd.DataFrame(self.metrics)
        for name, rows in self.baselines.items():
            base = pd.DataFrame(rows).set_index('horizon')
            for col in base.columns:
                if col == 'steps':
                    continue
                df[f"{name}_{col}"] = df['horizon'].map(base[col])
        return df

    def ttc_frame(self) -> 'pd.DataFrame':
        from pclc.utils.packages import import_pandas
        pd = import_pandas()
        df = pd.DataFrame.from_dict(self.ttc_deviation, orient='index')
        df.index.name = 'horizon'
        return df.reset_index()

    def write(self, directory: PathLike) -> List[pathlib.Path]:
        """
        Write `eval_report.json` and the flat tables `metrics.csv`,
        `ttc_deviation.csv` and `per_sample_ade.csv` into `directory`.
        """
        from pclc.config.static import STATIC_CONFIG
        from pclc.utils.misc import jsonable
        from pclc.utils.packages import import_pandas
        pd = import_pandas()
        files = STATIC_CONFIG['files']
        directory = pathlib.Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = [
            directory / files['eval_report'],
            directory / files['eval_metrics'],
            directory / files['eval_ttc'],
            directory / files['eval_samples'],
        ]
        with open(paths[0], 'w', encoding='utf-8') as f:
            json.dump(jsonable(self.to_dict()), f, indent=2)
        self.metrics_frame().to_csv(paths[1], index=False, float_format='%.17g')
        self.ttc_frame().to_csv(paths[2], index=False)
        pd.DataFrame({'ade': self.per_sample_ade}).to_csv(paths[3], index_label='window', float_format='%.17g')
        return paths

    def __repr__(self) -> str:
        return f"EvalReport(variant={self.variant}, windows={self.n_windows}, horizons={self.horizons})"


def read_report(directory: PathLike) -> EvalReport:
    """Load the JSON report written by `EvalReport.write()`."""
    from pclc.config.static import STATIC_CONFIG
    from pclc.utils.warnings import error
    path = pathlib.Path(directory)
    if path.is_dir():
        path = path / STATIC_CONFIG['files']['eval_report']
    if not path.exists():
        error(f"No evaluation report at '{path}'.", FileNotFoundError)
    with open(path, 'r', encoding='utf-8') as f:
        return EvalReport.from_dict(json.load(f))


def _horizon_rows(samples: np.ndarray, truth: np.ndarray, windows, horizons, crash_kw) -> List[Dict[str, float]]:
    from pclc.evaluation._metrics import ade, fde
    from pclc.evaluation._safety import crash_flags
    rows = []
    for h, steps in horizons:
        pred, true = samples[:, :, :steps], np.broadcast_to(truth[None, :, :steps], samples[:, :, :steps].shape)
        flags = crash_flags(samples, windows, steps=steps, **crash_kw)
        rows.append({
            'horizon': h,
            'steps': steps,
            ### Mean over windows of the mean over k samples.
            'ade': float(np.mean(ade(pred, true))),
            'fde': float(np.mean(fde(pred, true))),
            'false_crash_rate': float(np.count_nonzero(flags)) / len(windows),
        })
    return rows


def evaluate(
        checkpoint: 'pclc.model.Checkpoint',
        windows: Sequence['pclc.core.Window'],
        k: Optional[int] = None,
        horizons: Optional[Sequence[float]] = None,
        seed: Optional[int] = None,
        shrink: Optional[float] = None,
        heading_window: Optional[int] = None,
        ttc_edges: Optional[Sequence[float]] = None,
        baselines: bool = True,
        debug: bool = False,
    ) -> EvalReport:
    """
    Score a trained network on test windows at every horizon.

    ADE and FDE are averaged over `k` samples and then over windows. The
    false-crash rate flags a window if any of its `k` samples overlaps a
    surrounding vehicle. With `baselines=True` the constant-velocity
    extrapolation is scored on the same windows.

    Parameters
    ----------
    checkpoint: Checkpoint
        The trained network and its normalization statistics.

    windows: Sequence[Window]
        Test windows (raw or normalized).

    k, horizons, seed, shrink, heading_window, ttc_edges:
        Default to the `evaluation` section of the configuration.

    Returns
    -------
    An `EvalReport`.
    """
    from pclc.config import get_config
    from pclc.utils.warnings import error
    from pclc.evaluation._metrics import ade, horizon_steps
    from pclc.evaluation._predict import sample_trajectories, true_future, constant_velocity_samples
    from pclc.evaluation._safety import ttc_deviation
    cfg = get_config('evaluation')
    k = cfg['k'] if k is None else int(k)
    seed = cfg['seed'] if seed is None else int(seed)
    horizons = cfg['horizons'] if horizons is None else list(horizons)
    windows = list(windows)
    if not windows:
        error("Cannot evaluate on an empty window set.", ValueError)

    steps = horizon_steps(horizons, windows[0].dt, windows[0].t_pre)
    if not steps:
        error(f"None of the horizons {horizons} fit a {windows[0].t_pre}-step prediction.", ValueError)
    crash_kw = {'shrink': shrink, 'heading_window': heading_window}
    truth = np.stack([true_future(w) for w in windows])
    samples = sample_trajectories(checkpoint, windows, k=k, seed=seed, debug=debug)
    metrics = _horizon_rows(samples, truth, windows, steps, crash_kw)

    baseline_rows = {}
    if baselines:
        cv = constant_velocity_samples(windows, 1, checkpoint.stats)
        baseline_rows['constant_velocity'] = _horizon_rows(cv, truth, windows, steps, crash_kw)

    longest = steps[-1][1]
    per_sample = ade(samples[:, :, :longest], np.broadcast_to(truth[None, :, :longest], samples[:, :, :longest].shape))
    table = ttc_deviation(
        checkpoint, windows, horizons=[h for h, _ in steps], edges=ttc_edges, stats=checkpoint.stats,
    )
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Evaluated {checkpoint.variant} on {len(windows)} windows at horizons {[h for h, _ in steps]}.")
    return EvalReport(
        variant = checkpoint.variant,
        k = k,
        seed = seed,
        n_windows = len(windows),
        metrics = metrics,
        baselines = baseline_rows,
        ttc_deviation = {f"{h:g}": row for h, row in table.items()},
        per_sample_ade = [float(v) for v in np.mean(per_sample, axis=0)],
        meta = {'best_epoch': checkpoint.meta.get('best_epoch')},
    )


def compare_reports(reports: Sequence[EvalReport], labels: Optional[Sequence[str]] = None) -> 'pd.DataFrame':
    """
    Side-by-side table of several reports, one row per (report, horizon).

    `improvement` is the relative ADE gain over the first report at the same horizon,
    `(ADE_ref - ADE) / ADE_ref`.
    """
    from pclc.utils.packages import import_pandas
    from pclc.utils.warnings import error
    pd = import_pandas()
    if not reports:
        error("Nothing to compare.", ValueError)
    if labels is None:
        labels = [r.variant for r in reports]
    if len(labels) != len(reports):
        error(f"Got {len(labels)} labels for {len(reports)} reports.", ValueError)
    ref = {round(row['horizon'], 9): row['ade'] for row in reports[0].metrics}
    rows = []
    for label, report in zip(labels, reports):
        for row in report.metrics:
            ref_ade = ref.get(round(row['horizon'], 9))
            rows.append({
                'label': label,
                'variant': report.variant,
                'horizon': row['horizon'],
                'ade': row['ade'],
                'fde': row['fde'],
                'false_crash_rate': row['false_crash_rate'],
                'improvement': (
                    (ref_ade - row['ade']) / ref_ade
                    if ref_ade is not None and ref_ade > 0 else float('nan')
                ),
            })
    return pd.DataFrame(rows)
