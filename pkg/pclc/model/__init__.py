#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The trajectory prediction network and its objectives.

```
>>> from pclc.model import build_model
>>> model = build_model('CIT')
>>> model.variant.value
'CIT'
```
"""

from pclc.model._errors import CheckpointError
from pclc.model._config import ModelConfig, Variant
from pclc.model._module import Module, glorot
from pclc.model._layers import Linear, MLP, GRUCell, LayerNorm
from pclc.model._attention import MultiHeadAttention, TransformerBlock
from pclc.model._encoder import HistoryEncoder, GaussianHead, sample_latent
from pclc.model._interaction import (
    GraphSnapshot,
    build_graph,
    neighbor_index,
    attention_head,
    InteractionModule,
)
from pclc.model._decoder import TransformerDecoder, MLPDecoder, RecurrentDecoder
from pclc.model._network import TrajectoryModel, ForwardOutput, build_model
from pclc.model._losses import (
    LossWeights,
    loss_reconstruction,
    loss_kl,
    loss_interaction,
    loss_total,
    composite_loss,
)
from pclc.model._checkpoint import Checkpoint, save_checkpoint, load_checkpoint
