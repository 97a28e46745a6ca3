#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Save and restore trained networks.

A checkpoint directory holds `checkpoint.json` (format version, hyperparameters,
parameter names and shapes, normalization statistics, training history) and
one little-endian float64 file per parameter under `params/`.
"""

from __future__ import annotations
import json
import pathlib
from dataclasses import dataclass, field
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, PathLike
from pclc.model._errors import CheckpointError

_DTYPE = '<f8'


@dataclass
class Checkpoint:
    """
    A trained network with everything needed to evaluate it.

    Attributes
    ----------
    model: TrajectoryModel
        The network (parameters included).

    stats: Optional[NormStats]
        Normalization fitted on the training windows.

    train_config: Dict[str, Any]
        The training configuration that produced the parameters.

    history: List[Dict[str, float]]
        Per-epoch losses.

    log: List[Dict[str, float]]
        Per-step losses of the run that produced the parameters (not stored in the manifest).
    """
    model: 'pclc.model.TrajectoryModel'
    stats: Optional['pclc.core.NormStats'] = None
    train_config: Dict[str, Any] = field(default_factory=dict)
    history: List[Dict[str, Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)
    log: List[Dict[str, float]] = field(default_factory=list, repr=False)

    @property
    def variant(self) -> str:
        return self.model.variant.value

    def save(self, directory: PathLike) -> pathlib.Path:
        return save_checkpoint(self, directory)

    def __repr__(self) -> str:
        return f"Checkpoint(variant={self.variant}, epochs={len(self.history)})"


def _param_file(name: str) -> str:
    from pclc.config.static import STATIC_CONFIG
    return name + STATIC_CONFIG['files']['param_suffix']


def save_checkpoint(checkpoint: Checkpoint, directory: PathLike, debug: bool = False) -> pathlib.Path:
    """
    Write a checkpoint into `directory` and return the manifest path.
    Existing parameter files with the same names are overwritten.
    """
    from pclc.config.static import STATIC_CONFIG
    files = STATIC_CONFIG['files']
    directory = pathlib.Path(directory)
    params_dir = directory / files['params_dir']
    params_dir.mkdir(parents=True, exist_ok=True)

    parameters = []
    for name, param in checkpoint.model.named_parameters():
        file_name = _param_file(name)
        np.ascontiguousarray(param.values, dtype=_DTYPE).tofile(params_dir / file_name)
        parameters.append({'name': name, 'shape': list(param.shape), 'file': file_name})

    manifest = {
        'format': STATIC_CONFIG['formats']['checkpoint'],
        'dtype': _DTYPE,
        'variant': checkpoint.variant,
        'seed': checkpoint.model.seed,
        'model_config': checkpoint.model.config.to_dict(),
        'train_config': checkpoint.train_config,
        'norm_stats': checkpoint.stats.to_dict() if checkpoint.stats is not None else None,
        'history': checkpoint.history,
        'meta': checkpoint.meta,
        'parameters': parameters,
    }
    path = directory / files['checkpoint']
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(manifest, f, indent=2)
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Wrote {len(parameters)} parameters to '{params_dir}'.")
    return path


def load_checkpoint(directory: PathLike, debug: bool = False) -> Checkpoint:
    """
    Rebuild a network from a checkpoint directory.

    Raises
    ------
    `CheckpointError` if the manifest is missing, has an incompatible major version,
    or a parameter file has the wrong size.
    """
    from pclc.config.static import STATIC_CONFIG
    from pclc.utils.warnings import error
    from pclc.model._network import TrajectoryModel
    from pclc.core import NormStats
    files = STATIC_CONFIG['files']
    directory = pathlib.Path(directory)
    path = directory / files['checkpoint']
    if not path.exists():
        error(f"No checkpoint manifest at '{path}'.", CheckpointError)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            manifest = json.load(f)
    except json.JSONDecodeError as e:
        error(f"Checkpoint manifest '{path}' is not valid JSON: {e}", CheckpointError)

    expected = STATIC_CONFIG['formats']['checkpoint']
    if str(manifest.get('format', '0')).split('.')[0] != expected.split('.')[0]:
        error(f"Checkpoint format {manifest.get('format')} is incompatible with {expected}.", CheckpointError)

    model = TrajectoryModel(manifest['model_config'], seed=int(manifest.get('seed', 0)))
    state = {}
    for entry in manifest['parameters']:
        param_path = directory / files['params_dir'] / entry['file']
        if not param_path.exists():
            error(f"Missing parameter file '{param_path}'.", CheckpointError)
        values = np.fromfile(param_path, dtype=manifest.get('dtype', _DTYPE))
        shape = tuple(entry['shape'])
        if values.size != int(np.prod(shape)):
            error(
                f"Parameter '{entry['name']}' has {values.size} values, expected shape {shape}.",
                CheckpointError,
            )
        state[entry['name']] = values.reshape(shape).astype(np.float64)
    model.load_state_dict(state)
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Loaded {model} from '{directory}'.")

    stats = manifest.get('norm_stats')
    return Checkpoint(
        model = model,
        stats = NormStats.from_dict(stats) if stats else None,
        train_config = manifest.get('train_config') or {},
        history = manifest.get('history') or [],
        meta = manifest.get('meta') or {},
    )
