#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The optimization loop.
"""

from __future__ import annotations
import math
import pathlib
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, PathLike, Sequence, Tuple, Union
from pclc.trainer._config import TrainConfig
from pclc.trainer._errors import TrainingError

LOG_COLUMNS = ('epoch', 'step', 'Lp', 'Lkl', 'Lint', 'Ltotal')


def build_variant(config: Union[TrainConfig, Dict[str, Any], None] = None) -> 'pclc.model.TrajectoryModel':
    """
    Construct the network a training configuration asks for.

    Raises
    ------
    `pydantic.ValidationError` (a `ValueError`) for an unknown variant tag.
    """
    from pclc.model import TrajectoryModel, ModelConfig
    if not isinstance(config, TrainConfig):
        config = TrainConfig(**(config or {}))
    return TrajectoryModel(ModelConfig(**config.model_settings()), seed=config.seed)


def stack_windows(windows: Sequence['pclc.core.Window']) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return `(X, Y, B)` arrays with a leading window axis."""
    return (
        np.stack([w.X for w in windows]),
        np.stack([w.Y for w in windows]),
        np.stack([w.B for w in windows]),
    )


def _prepare(
        windows: Sequence['pclc.core.Window'],
        stats: Optional['pclc.core.NormStats'],
    ) -> Tuple[List['pclc.core.Window'], Optional['pclc.core.NormStats']]:
    from pclc.core import normalize
    if all(w.normalized for w in windows):
        if stats is None:
            from pclc.utils.warnings import warn
            warn("Training on normalized windows without their statistics; predictions cannot be mapped to meters.", stack=False)
        return list(windows), stats
    return normalize(windows, stats)


def _validation_split(windows, fraction: float, seed: int):
    """Hold out `fraction` of the training events (none if there is a single event)."""
    from pclc.core import split_event_ids
    event_ids = sorted({w.event_id for w in windows})
    if fraction <= 0.0 or len(event_ids) < 2:
        return list(windows), []
    train_ids, _ = split_event_ids(event_ids, fraction=1.0 - fraction, seed=seed)
    train_ids = set(train_ids)
    return (
        [w for w in windows if w.event_id in train_ids],
        [w for w in windows if w.event_id not in train_ids],
    )


def _term_value(name: str, term, epoch: int, batch: int) -> float:
    value = float(term.item())
    if not math.isfinite(value):
        from pclc.utils.warnings import error
        error(f"Non-finite {name} ({value}) at epoch {epoch}, batch {batch}.", TrainingError)
    return value


def train_step(
        model: 'pclc.model.TrajectoryModel',
        optimizer: 'pclc.trainer.Adam',
        X: np.ndarray,
        Y: np.ndarray,
        B: np.ndarray,
        config: TrainConfig,
        eps_rng: np.random.Generator,
        epoch: int = 0,
        batch: int = 0,
    ) -> Dict[str, float]:
    """
    One forward pass, backward pass, clip, and Adam update on a batch.

    Returns
    -------
    The loss terms of the batch (`Lkl`/`Lint` are 0 when the variant lacks them).

    Raises
    ------
    `TrainingError` naming the batch and the term that became non-finite.
    """
    from pclc.numerics import Tape, backward, NumericalError
    from pclc.model import loss_reconstruction, loss_kl, loss_interaction, loss_total
    from pclc.trainer._optim import clip_grad_norm
    from pclc.utils.warnings import error

    weights = config.weights
    optimizer.zero_grad()
    stage = 'forward pass'
    try:
        with Tape() as tape:
            out = model(X, rng=eps_rng)
            stage = 'Lp'
            Lp = loss_reconstruction(Y, out.Y_hat)
            Lkl = Lint = None
            if out.mu is not None:
                stage = 'Lkl'
                Lkl = loss_kl(out.mu, out.logvar)
            if out.B_hat is not None:
                stage = 'Lint'
                Lint = loss_interaction(B, out.B_hat)
            stage = 'Ltotal'
            total = loss_total(
                Lp,
                Lkl if weights.w2 > 0 else None,
                Lint if weights.w3 > 0 else None,
                weights,
            )
        stage = 'gradient'
        backward(total, tape)
    except NumericalError as e:
        error(f"Non-finite {stage} at epoch {epoch}, batch {batch}: {e}", TrainingError)

    row = {
        'Lp': _term_value('Lp', Lp, epoch, batch),
        'Lkl': _term_value('Lkl', Lkl, epoch, batch) if Lkl is not None else 0.0,
        'Lint': _term_value('Lint', Lint, epoch, batch) if Lint is not None else 0.0,
        'Ltotal': _term_value('Ltotal', total, epoch, batch),
    }
    row['grad_norm'] = clip_grad_norm(optimizer.params, config.clip_norm)
    optimizer.step()
    return row


def evaluate_loss(
        model,
        X: np.ndarray,
        Y: np.ndarray,
        B: np.ndarray,
        config: TrainConfig,
        epoch: int = 0,
    ) -> float:
    """
    Weighted loss on a held-out set, with the latent at its mean.

    Raises
    ------
    `TrainingError` naming the epoch and the validation term that became non-finite.
    """
    from pclc.numerics import no_grad, NumericalError
    from pclc.model import loss_reconstruction, loss_kl, loss_interaction, loss_total
    from pclc.utils.warnings import error

    weights = config.weights
    stage = 'forward pass'
    terms = {}
    try:
        with no_grad():
            out = model(X)
            stage = 'Lp'
            terms['Lp'] = loss_reconstruction(Y, out.Y_hat)
            if out.mu is not None and weights.w2 > 0:
                stage = 'Lkl'
                terms['Lkl'] = loss_kl(out.mu, out.logvar)
            if out.B_hat is not None and weights.w3 > 0:
                stage = 'Lint'
                terms['Lint'] = loss_interaction(B, out.B_hat)
            stage = 'Ltotal'
            terms['Ltotal'] = loss_total(terms['Lp'], terms.get('Lkl'), terms.get('Lint'), weights)
    except NumericalError as e:
        error(f"Non-finite validation {stage} at epoch {epoch}: {e}", TrainingError)

    for name, term in terms.items():
        value = float(term.item())
        if not math.isfinite(value):
            error(f"Non-finite validation {name} ({value}) at epoch {epoch}.", TrainingError)
    return float(terms['Ltotal'].item())


def train(
        config: Union[TrainConfig, Dict[str, Any], None],
        split: Union['pclc.core.DatasetSplit', Sequence['pclc.core.Window']],
        stats: Optional['pclc.core.NormStats'] = None,
        debug: bool = False,
    ) -> 'pclc.model.Checkpoint':
    """
    Train a network and return the checkpoint with the lowest validation loss.

    Parameters
    ----------
    config: Union[TrainConfig, Dict[str, Any], None]
        The training configuration (`None` uses the defaults).

    split: Union[DatasetSplit, Sequence[Window]]
        Training data; only `split.train` is used. Raw windows are normalized
        with statistics fitted on them (or with `stats` if given).

    stats: Optional[NormStats], default None
        Statistics of already-normalized windows, stored in the checkpoint.

    Returns
    -------
    A `Checkpoint` holding the best parameters, the statistics, the per-epoch
    history, and the per-step log (`checkpoint.log`).

    Raises
    ------
    `ValueError` if there are no training windows or their shapes disagree with the config.
    `TrainingError` if a loss term becomes non-finite.
    """
    from pclc.utils.packages import attempt_import
    from pclc.utils.warnings import error, info
    from pclc.model import Checkpoint
    from pclc.trainer._optim import Adam
    more_itertools = attempt_import('more_itertools')

    if not isinstance(config, TrainConfig):
        config = TrainConfig(**(config or {}))
    windows = list(getattr(split, 'train', split))
    if not windows:
        error("Cannot train without training windows.", ValueError)
    if windows[0].X.shape[0] != config.t_obs or windows[0].Y.shape[0] != config.t_pre:
        error(
            f"Windows have T_obs={windows[0].X.shape[0]}, T_pre={windows[0].Y.shape[0]} "
            + f"but the config expects {config.t_obs}, {config.t_pre}.",
            ValueError,
        )

    windows, stats = _prepare(windows, stats)
    fit_windows, val_windows = _validation_split(windows, config.val_fraction, config.seed)
    X, Y, B = stack_windows(fit_windows)
    val = stack_windows(val_windows) if val_windows else None

    model = build_variant(config)
    optimizer = Adam(
        model.parameters(),
        lr = config.learning_rate,
        beta1 = config.beta1,
        beta2 = config.beta2,
        eps = config.adam_eps,
    )
    if debug:
        from pclc.utils.debug import dprint
        dprint(
            f"Training {model} on {len(fit_windows)} windows "
            + f"({len(val_windows)} held out for validation)."
        )

    log: List[Dict[str, float]] = []
    history: List[Dict[str, float]] = []
    best_state, best_loss, best_epoch = None, math.inf, 0
    step = 0
    for epoch in range(config.epochs):
        order = np.random.default_rng([config.seed, epoch]).permutation(len(fit_windows))
        rows = []
        for batch, idx in enumerate(more_itertools.chunked(order, config.batch_size)):
            idx = np.asarray(idx)
            eps_rng = np.random.default_rng([config.seed, epoch, batch])
            row = train_step(model, optimizer, X[idx], Y[idx], B[idx], config, eps_rng, epoch, batch)
            step += 1
            rows.append(row)
            log.append({'epoch': epoch, 'step': step, **{k: row[k] for k in LOG_COLUMNS[2:]}})

        train_loss = float(np.mean([r['Ltotal'] for r in rows]))
        val_loss = evaluate_loss(model, *val, config, epoch) if val is not None else train_loss
        history.append({
            'epoch': epoch,
            'train_loss': train_loss,
            'val_loss': val_loss,
            **{k: float(np.mean([r[k] for r in rows])) for k in ('Lp', 'Lkl', 'Lint')},
        })
        if val_loss < best_loss:
            best_state, best_loss, best_epoch = model.state_dict(), val_loss, epoch
        if config.verbose:
            info(f"Epoch {epoch + 1}/{config.epochs}: train loss {train_loss:.4f}, validation loss {val_loss:.4f}")

    if best_state is not None:
        model.load_state_dict(best_state)
    return Checkpoint(
        model = model,
        stats = stats,
        train_config = config.to_dict(),
        history = history,
        meta = {
            'best_epoch': best_epoch,
            'best_loss': best_loss,
            'steps': step,
            'train_windows': len(fit_windows),
            'validation_windows': len(val_windows),
        },
        log = log,
    )


def write_train_log(log: Sequence[Dict[str, float]], path: PathLike) -> pathlib.Path:
    """Write the per-step loss log as CSV with columns `epoch,step,Lp,Lkl,Lint,Ltotal`."""
    from pclc.utils.packages import import_pandas
    pd = import_pandas()
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(list(log), columns=list(LOG_COLUMNS)).to_csv(path, index=False, float_format='%.17g')
    return path
