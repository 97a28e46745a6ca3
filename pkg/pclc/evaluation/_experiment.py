#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Train several variants over several seeds on one synthetic dataset and
compare them on a held-out set of scenes.
"""

from __future__ import annotations
import pathlib
from dataclasses import dataclass, field
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pclc.utils.typing import Any, Dict, List, Optional, PathLike, Tuple
from pclc.model import Variant

CONSTANT_VELOCITY = 'constant_velocity'


class ExperimentConfig(BaseModel):
    """
    An ablation run. Unset fields default to `get_config('experiment')`; the
    window geometry defaults to `get_config('windows')`.

    Scene `i` uses seed `scenario_seed + i` and yield probability
    `p_yields[i % len(p_yields)]`. The first `train_scenes` scenes are used for
    training and the next `test_scenes` are held out.
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    train_scenes: int = Field(gt=0)
    test_scenes: int = Field(gt=0)
    p_yields: List[float] = Field(min_length=1)
    variants: List[Variant] = Field(min_length=1)
    seeds: List[int] = Field(min_length=1)
    scenario_seed: int = Field(ge=0)
    t_obs: int = Field(gt=0)
    t_pre: int = Field(gt=0)
    step_s: float = Field(gt=0.0)
    k: Optional[int] = Field(default=None, gt=0)
    horizons: Optional[List[float]] = None
    train: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode='before')
    @classmethod
    def _fill_defaults(cls, data: Any) -> Any:
        from pclc.config import get_config
        from pclc.config._patch import apply_patch_to_config
        if isinstance(data, BaseModel):
            data = data.model_dump()
        if data is None:
            data = {}
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if isinstance(data.get('variants'), list):
            data['variants'] = [v.upper() if isinstance(v, str) else v for v in data['variants']]
        wcf = get_config('windows')
        defaults = {
            **get_config('experiment'),
            't_obs': wcf['t_obs'],
            't_pre': wcf['t_pre'],
            'step_s': wcf['step_s'],
        }
        return apply_patch_to_config(defaults, data)

    @field_validator('p_yields')
    @classmethod
    def _probabilities(cls, v: List[float]) -> List[float]:
        for p in v:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"Yield probabilities must be in [0, 1], got {p}.")
        return v

    @field_validator('train')
    @classmethod
    def _no_geometry_in_train(cls, v: Dict[str, Any]) -> Dict[str, Any]:
        for key in ('variant', 'seed', 't_obs', 't_pre'):
            if key in v:
                raise ValueError(f"`train.{key}` is set by the experiment, not by the training overrides.")
        return v

    def scenario_configs(self) -> Tuple[list, list]:
        """`(train, test)` lists of `ScenarioConfig`."""
        from pclc.simgen import ScenarioConfig
        n = self.train_scenes + self.test_scenes
        configs = [
            ScenarioConfig(seed=self.scenario_seed + i, p_yield=self.p_yields[i % len(self.p_yields)])
            for i in range(n)
        ]
        return configs[:self.train_scenes], configs[self.train_scenes:]

    def train_config(self, variant: Variant, seed: int) -> 'pclc.trainer.TrainConfig':
        from pclc.trainer import TrainConfig
        return TrainConfig(variant=variant, seed=seed, t_obs=self.t_obs, t_pre=self.t_pre, **self.train)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode='json')


@dataclass
class AblationResult:
    """
    Reports of every `(variant, seed)` run and their seed-mean summary.

    `summary` has one row per (label, horizon) with the seed means of `ade`, `fde`,
    `false_crash_rate` and `improvement` (relative ADE gain over the first variant).
    The constant-velocity baseline appears under the label `constant_velocity`.
    """
    config: ExperimentConfig
    reports: Dict[Tuple[str, int], 'pclc.evaluation.EvalReport'] = field(default_factory=dict)
    summary: Optional['pd.DataFrame'] = None

    def mean(self, label: str, horizon: float, column: str = 'ade') -> float:
        """Seed mean of `column` for `label` at `horizon`."""
        from pclc.utils.warnings import error
        df = self.summary
        match = df[(df['label'] == label) & ((df['horizon'] - float(horizon)).abs() < 1e-9)]
        if match.empty:
            error(f"No summary row for '{label}' at {horizon:g} s.", KeyError)
        return float(match[column].iloc[0])

    def directional_checks(self) -> Dict[str, bool]:
        """
        Whether the full model beats its ablation and the constant-velocity baseline:
        CIT ADE at 5 s against CVAE_T, CIT ADE at 3 s and 5 s against constant velocity,
        and the CIT false-crash rate at 5 s against CVAE_T.
        Checks whose variant or horizon is missing from the run are left out.
        """
        labels = set(self.summary['label'])
        horizons = {round(float(h), 9) for h in self.summary['horizon']}
        cit, cvae_t = Variant.CIT.value, Variant.CVAE_T.value
        wanted = [
            ('ade_5s_cit_vs_cvae_t', cit, cvae_t, 5.0, 'ade'),
            ('ade_3s_cit_vs_constant_velocity', cit, CONSTANT_VELOCITY, 3.0, 'ade'),
            ('ade_5s_cit_vs_constant_velocity', cit, CONSTANT_VELOCITY, 5.0, 'ade'),
            ('false_crash_5s_cit_vs_cvae_t', cit, cvae_t, 5.0, 'false_crash_rate'),
        ]
        return {
            name: self.mean(a, h, col) <= self.mean(b, h, col)
            for name, a, b, h, col in wanted
            if a in labels and b in labels and h in horizons
        }

    def write(self, directory: PathLike) -> List[pathlib.Path]:
        """Write `ablation.csv`, `ablation.json` and one report directory per run."""
        import json
        from pclc.config.static import STATIC_CONFIG
        from pclc.utils.misc import jsonable
        directory = pathlib.Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        files = STATIC_CONFIG['files']
        csv_path = directory / files['ablation_summary']
        self.summary.to_csv(csv_path, index=False, float_format='%.17g')
        json_path = directory / files['ablation_checks']
        with open(json_path, 'w', encoding='utf-8') as f:
            json.dump(jsonable({
                'config': self.config.to_dict(),
                'checks': self.directional_checks(),
            }), f, indent=2)
        paths = [csv_path, json_path]
        for (variant, seed), report in self.reports.items():
            paths += report.write(directory / f"{variant}_seed{seed}")
        return paths


def _improvement(ref_ade: Optional[float], ade: float) -> float:
    return (ref_ade - ade) / ref_ade if ref_ade is not None and ref_ade > 0 else float('nan')


def summarize_runs(
        reports: Dict[Tuple[str, int], 'pclc.evaluation.EvalReport'],
        variants: List[str],
    ) -> 'pd.DataFrame':
    """Seed-mean table of the variants (ordered as `variants`) and the constant-velocity baseline."""
    from pclc.utils.packages import import_pandas
    from pclc.evaluation._report import compare_reports
    pd = import_pandas()
    seeds = sorted({seed for _, seed in reports})
    frames = []
    for seed in seeds:
        runs = [reports[(v, seed)] for v in variants if (v, seed) in reports]
        table = compare_reports(runs, labels=[r.variant for r in runs])
        ref = {round(row['horizon'], 9): row['ade'] for row in runs[0].metrics}
        baseline = runs[0].baselines.get(CONSTANT_VELOCITY, [])
        cv = pd.DataFrame([
            {
                'label': CONSTANT_VELOCITY,
                'variant': CONSTANT_VELOCITY,
                'horizon': row['horizon'],
                'ade': row['ade'],
                'fde': row['fde'],
                'false_crash_rate': row['false_crash_rate'],
                'improvement': _improvement(ref.get(round(row['horizon'], 9)), row['ade']),
            }
            for row in baseline
        ])
        frames.append(pd.concat([table, cv], ignore_index=True).assign(seed=seed))
    runs = pd.concat(frames, ignore_index=True)
    order = {label: i for i, label in enumerate(list(variants) + [CONSTANT_VELOCITY])}
    summary = (
        runs.groupby(['label', 'horizon'], as_index=False)[['ade', 'fde', 'false_crash_rate', 'improvement']]
        .mean()
        .assign(seeds=len(seeds))
    )
    summary['_order'] = summary['label'].map(order)
    return summary.sort_values(['_order', 'horizon']).drop(columns='_order').reset_index(drop=True)


def run_ablation(
        config: Optional[ExperimentConfig] = None,
        workers: Optional[int] = None,
        debug: bool = False,
    ) -> AblationResult:
    """
    Generate the train and held-out scenes, train each variant once per seed on
    the training windows, and evaluate every run on the held-out windows.

    Parameters
    ----------
    config: Optional[ExperimentConfig], default None
        The run. `None` uses `get_config('experiment')`.

    workers: Optional[int], default None
        Threads for scene generation (capped by `PCLC_THREADS`).

    Returns
    -------
    An `AblationResult`.
    """
    from pclc.core import build_windows
    from pclc.simgen import generate_scenario
    from pclc.trainer import train
    from pclc.evaluation._report import evaluate
    from pclc.utils.pool import parallel_map
    from pclc.utils.warnings import error, info
    if config is None:
        config = ExperimentConfig()

    def _windows(scenario_configs):
        scenarios = parallel_map(lambda cfg: generate_scenario(cfg, debug=debug), scenario_configs, workers=workers)
        return [
            w
            for s in scenarios
            for w in build_windows(s.scene, t_obs=config.t_obs, t_pre=config.t_pre, step_s=config.step_s)
        ]

    train_configs, test_configs = config.scenario_configs()
    train_windows, test_windows = _windows(train_configs), _windows(test_configs)
    if not train_windows or not test_windows:
        error(
            f"The scenes are too short for T_obs={config.t_obs}, T_pre={config.t_pre}: "
            + f"{len(train_windows)} training and {len(test_windows)} test windows.",
            ValueError,
        )

    variants = [v.value for v in config.variants]
    result = AblationResult(config=config)
    for seed in config.seeds:
        for variant in variants:
            if debug:
                info(f"Training {variant} with seed {seed} on {len(train_windows)} windows.")
            checkpoint = train(config.train_config(variant, seed), train_windows, debug=debug)
            result.reports[(variant, seed)] = evaluate(
                checkpoint, test_windows, k=config.k, horizons=config.horizons, seed=seed, debug=debug,
            )
    result.summary = summarize_runs(result.reports, variants)
    return result
