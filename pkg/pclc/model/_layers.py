#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Dense building blocks: affine maps, perceptrons, GRU cells, and layer norms.
"""

from __future__ import annotations
import numpy as np
from pclc.numerics import Tensor, layer_norm, relu, sigmoid, tanh
from pclc.utils.typing import Optional, Sequence
from pclc.model._module import Module, glorot


class Linear(Module):
    """`x @ W + b` over the last axis of `x`."""

    def __init__(self, d_in: int, d_out: int, rng: np.random.Generator, bias: bool = True):
        super().__init__()
        self.d_in, self.d_out = d_in, d_out
        self.add_param('W', glorot(rng, d_in, d_out))
        self.has_bias = bias
        if bias:
            self.add_param('b', np.zeros(d_out))

    def __call__(self, x: Tensor) -> Tensor:
        out = x @ self.W
        return out + self.b if self.has_bias else out


class MLP(Module):
    """
    A stack of `Linear` layers with ReLU between them.

    Parameters
    ----------
    dims: Sequence[int]
        Layer widths, input first, e.g. `[25, 64, 64]`.

    final_activation: bool, default False
        Also apply ReLU after the last layer.
    """

    def __init__(self, dims: Sequence[int], rng: np.random.Generator, final_activation: bool = False):
        super().__init__()
        dims = list(dims)
        if len(dims) < 2:
            from pclc.utils.warnings import error
            error(f"An MLP needs at least two widths, got {dims}.", ValueError)
        self.n_layers = len(dims) - 1
        for i, (d_in, d_out) in enumerate(zip(dims[:-1], dims[1:])):
            self.add_module(f'fc{i}', Linear(d_in, d_out, rng))
        self.final_activation = final_activation

    def __call__(self, x: Tensor) -> Tensor:
        for i in range(self.n_layers):
            x = getattr(self, f'fc{i}')(x)
            if i < self.n_layers - 1 or self.final_activation:
                x = relu(x)
        return x


class GRUCell(Module):
    """
    Gated recurrent unit.

    ```
    z = sigmoid(x W_z + h U_z + b_z)
    r = sigmoid(x W_r + h U_r + b_r)
    n = tanh(x W_n + r * (h U_n) + b_n)
    h' = (1 - z) * n + z * h
    ```
    """

    def __init__(self, d_in: int, d_h: int, rng: np.random.Generator):
        super().__init__()
        self.d_in, self.d_h = d_in, d_h
        for gate in ('z', 'r', 'n'):
            self.add_param(f'W_{gate}', glorot(rng, d_in, d_h))
            self.add_param(f'U_{gate}', glorot(rng, d_h, d_h))
            self.add_param(f'b_{gate}', np.zeros(d_h))

    def initial_state(self, batch: int) -> Tensor:
        return Tensor(np.zeros((batch, self.d_h)))

    def __call__(self, x: Tensor, h: Tensor) -> Tensor:
        z = sigmoid(x @ self.W_z + h @ self.U_z + self.b_z)
        r = sigmoid(x @ self.W_r + h @ self.U_r + self.b_r)
        n = tanh(x @ self.W_n + r * (h @ self.U_n) + self.b_n)
        return (1.0 - z) * n + z * h


class LayerNorm(Module):
    """Layer normalization over the last axis with a learned gain and bias."""

    def __init__(self, d: int, eps: float = 1e-5):
        super().__init__()
        self.eps = eps
        self.add_param('gain', np.ones(d))
        self.add_param('bias', np.zeros(d))

    def __call__(self, x: Tensor) -> Tensor:
        return layer_norm(x, self.gain, self.bias, eps=self.eps)
