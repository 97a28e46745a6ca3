#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Train a trajectory network on a window split.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def train(
        action: Optional[List[str]] = None,
        config: Optional[str] = None,
        data: Optional[str] = None,
        out: Optional[str] = None,
        variant: Optional[str] = None,
        epochs: Optional[int] = None,
        seed: Optional[int] = None,
        debug: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Train on the training part of `--data` and write the best-validation
    checkpoint and the per-step loss log (`train_log.csv`) into `--out`.

    The config file holds `TrainConfig` fields (optionally under a `train` key);
    `--variant`, `--epochs` and `--seed` override it.

    Usage:
        `pclc train --config train.json --data ds/ --out ckpt/`
    """
    import pathlib
    from pclc.actions._common import missing_arguments, read_action_config, start_manifest, close_manifest
    from pclc.config.static import STATIC_CONFIG
    from pclc.core import load_split
    from pclc.trainer import TrainConfig, train as train_model, save_checkpoint, write_train_log
    missing = missing_arguments({'data': data, 'out': out}, 'data', 'out')
    if missing:
        return missing

    cf = {'verbose': True}
    cf.update(read_action_config(config, 'train'))
    overrides = {'variant': variant, 'epochs': epochs, 'seed': seed}
    cf.update({k: v for k, v in overrides.items() if v is not None})
    train_config = TrainConfig(**cf)

    dataset = load_split(data)
    checkpoint = train_model(train_config, dataset, debug=debug)

    out = pathlib.Path(out)
    manifest = start_manifest(
        'train',
        train_config.to_dict(),
        seed = train_config.seed,
        data = data,
        config = config,
    )
    manifest.add_output('checkpoint', save_checkpoint(checkpoint, out, debug=debug))
    manifest.add_output('params', out / STATIC_CONFIG['files']['params_dir'])
    manifest.add_output('train_log', write_train_log(checkpoint.log, out / STATIC_CONFIG['files']['train_log']))
    close_manifest(manifest, out)
    meta = checkpoint.meta
    return True, (
        f"Trained {checkpoint.variant} for {train_config.epochs} epochs "
        + f"(best epoch {meta.get('best_epoch')}, loss {meta.get('best_loss', float('nan')):.6g}); "
        + f"checkpoint written to '{out}'."
    )
