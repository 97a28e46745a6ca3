#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Train prediction networks and build the ablation variants.
"""

from pclc.trainer._errors import TrainingError
from pclc.trainer._config import TrainConfig, default_weights, read_train_config
from pclc.trainer._optim import Adam, clip_grad_norm, global_norm
from pclc.trainer._train import (
    LOG_COLUMNS,
    build_variant,
    stack_windows,
    train_step,
    evaluate_loss,
    train,
    write_train_log,
)
from pclc.model import Checkpoint, save_checkpoint, load_checkpoint
