#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Scaled dot-product self-attention and a pre-norm Transformer block.
"""

from __future__ import annotations
import math
import numpy as np
from pclc.numerics import Tensor, relu, softmax
from pclc.model._module import Module
from pclc.model._layers import Linear, LayerNorm


class MultiHeadAttention(Module):
    """
    Self-attention over a sequence `(B, S, d_model)`.

    Heads are split with `reshape` and `transpose`, scored with a batched matmul,
    and merged back before the output projection.
    """

    def __init__(self, d_model: int, heads: int, rng: np.random.Generator):
        super().__init__()
        if d_model % heads != 0:
            from pclc.utils.warnings import error
            error(f"d_model={d_model} is not divisible by heads={heads}.", ValueError)
        self.d_model, self.heads = d_model, heads
        self.d_k = d_model // heads
        self.add_module('q', Linear(d_model, d_model, rng))
        self.add_module('k', Linear(d_model, d_model, rng))
        self.add_module('v', Linear(d_model, d_model, rng))
        self.add_module('o', Linear(d_model, d_model, rng))

    def _split(self, x: Tensor) -> Tensor:
        batch, seq, _ = x.shape
        return x.reshape(batch, seq, self.heads, self.d_k).transpose(0, 2, 1, 3)

    def __call__(self, x: Tensor) -> Tensor:
        batch, seq, _ = x.shape
        q, k, v = self._split(self.q(x)), self._split(self.k(x)), self._split(self.v(x))
        scores = (q @ k.transpose(0, 1, 3, 2)) / math.sqrt(self.d_k)
        weights = softmax(scores, axis=-1)
        out = (weights @ v).transpose(0, 2, 1, 3).reshape(batch, seq, self.d_model)
        return self.o(out)


class TransformerBlock(Module):
    """`x + MHA(LN(x))` followed by `x + FFN(LN(x))`."""

    def __init__(self, d_model: int, heads: int, d_ff: int, rng: np.random.Generator):
        super().__init__()
        self.add_module('ln1', LayerNorm(d_model))
        self.add_module('attn', MultiHeadAttention(d_model, heads, rng))
        self.add_module('ln2', LayerNorm(d_model))
        self.add_module('ff1', Linear(d_model, d_ff, rng))
        self.add_module('ff2', Linear(d_ff, d_model, rng))

    def __call__(self, x: Tensor) -> Tensor:
        x = x + self.attn(self.ln1(x))
        return x + self.ff2(relu(self.ff1(self.ln2(x))))
