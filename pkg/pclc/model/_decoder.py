#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Trajectory decoders: fusion MLP, Transformer over learned query slots,
a direct MLP head, and a recurrent roll-out.
"""

from __future__ import annotations
import numpy as np
from pclc.numerics import Tensor, broadcast_to, concat, stack
from pclc.model._module import Module
from pclc.model._layers import Linear, MLP, GRUCell, LayerNorm
from pclc.model._attention import TransformerBlock


class TransformerDecoder(Module):
    """
    Decode a fused context `(B, d_f)` into `(B, T_pre, 2)`.

    Each of the `T_pre` slots is a learned positional embedding concatenated with
    the context, projected to `d_trans`, passed through pre-norm blocks, and mapped
    to a position.
    """

    def __init__(
            self,
            d_fuse: int,
            t_pre: int,
            d_pos: int,
            d_model: int,
            layers: int,
            heads: int,
            d_ff: int,
            rng: np.random.Generator,
        ):
        super().__init__()
        self.t_pre, self.d_pos = t_pre, d_pos
        self.add_param('positions', rng.normal(0.0, 0.02, (t_pre, d_pos)))
        self.add_module('proj', Linear(d_pos + d_fuse, d_model, rng))
        self.n_layers = layers
        for i in range(layers):
            self.add_module(f'block{i}', TransformerBlock(d_model, heads, d_ff, rng))
        self.add_module('ln', LayerNorm(d_model))
        self.add_module('predictor', Linear(d_model, 2, rng))

    def __call__(self, fused: Tensor) -> Tensor:
        batch, d_fuse = fused.shape
        context = broadcast_to(fused.reshape(batch, 1, d_fuse), (batch, self.t_pre, d_fuse))
        slots = broadcast_to(self.positions.reshape(1, self.t_pre, self.d_pos), (batch, self.t_pre, self.d_pos))
        x = self.proj(concat([slots, context], axis=-1))
        for i in range(self.n_layers):
            x = getattr(self, f'block{i}')(x)
        return self.predictor(self.ln(x))


class MLPDecoder(Module):
    """Map the fused context straight to all `T_pre` positions."""

    def __init__(self, d_fuse: int, t_pre: int, hidden: int, rng: np.random.Generator):
        super().__init__()
        self.t_pre = t_pre
        self.add_module('mlp', MLP([d_fuse, hidden, t_pre * 2], rng))

    def __call__(self, fused: Tensor) -> Tensor:
        return self.mlp(fused).reshape(fused.shape[0], self.t_pre, 2)


class RecurrentDecoder(Module):
    """
    Roll a GRU forward from the history encoding; each step feeds back its previous output.
    """

    def __init__(self, d_h: int, t_pre: int, rng: np.random.Generator):
        super().__init__()
        self.t_pre = t_pre
        self.add_module('gru', GRUCell(2, d_h, rng))
        self.add_module('predictor', Linear(d_h, 2, rng))

    def __call__(self, h: Tensor) -> Tensor:
        y = Tensor(np.zeros((h.shape[0], 2)))
        outputs = []
        for _ in range(self.t_pre):
            h = self.gru(y, h)
            y = self.predictor(h)
            outputs.append(y)
        return stack(outputs, axis=1)
