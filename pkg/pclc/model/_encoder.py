#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
History encoding and the Gaussian latent head.
"""

from __future__ import annotations
import numpy as np
from pclc.numerics import Tensor, as_tensor, clip, exp
from pclc.utils.typing import Tuple
from pclc.model._module import Module
from pclc.model._layers import Linear, MLP, GRUCell


class HistoryEncoder(Module):
    """
    Embed each observed step with an MLP and run a GRU over the steps.

    Input `X` is `(B, T_obs, V, F)` (or `(T_obs, V, F)` for one window);
    the output is the final hidden state `(B, d_h)` starting from `h0 = 0`.
    """

    def __init__(self, n_vehicles: int, n_features: int, d_h: int, hidden: int, rng: np.random.Generator):
        super().__init__()
        self.d_in = n_vehicles * n_features
        self.d_h = d_h
        self.add_module('embed', MLP([self.d_in, hidden, d_h], rng, final_activation=True))
        self.add_module('gru', GRUCell(d_h, d_h, rng))

    def __call__(self, X) -> Tensor:
        X = as_tensor(X)
        if X.ndim == 3:
            X = X.reshape(1, *X.shape)
        if X.ndim != 4 or X.shape[2] * X.shape[3] != self.d_in:
            from pclc.numerics import ShapeError
            from pclc.utils.warnings import error
            error(f"Expected history of shape (B, T_obs, V, F) with V*F={self.d_in}, got {X.shape}.", ShapeError)
        batch, t_obs = X.shape[0], X.shape[1]
        emb = self.embed(X.reshape(batch, t_obs, self.d_in))
        h = self.gru.initial_state(batch)
        for t in range(t_obs):
            h = self.gru(emb[:, t, :], h)
        return h


class GaussianHead(Module):
    """Two affine maps from `h` to the latent mean and log-variance."""

    def __init__(self, d_h: int, d_z: int, rng: np.random.Generator, logvar_min: float = -30.0, logvar_max: float = 20.0):
        super().__init__()
        self.d_z = d_z
        self.logvar_min, self.logvar_max = logvar_min, logvar_max
        self.add_module('mu', Linear(d_h, d_z, rng))
        self.add_module('logvar', Linear(d_h, d_z, rng))

    def __call__(self, h: Tensor) -> Tuple[Tensor, Tensor]:
        return self.mu(h), clip(self.logvar(h), self.logvar_min, self.logvar_max)


def sample_latent(mu: Tensor, logvar: Tensor, eps) -> Tensor:
    """Reparameterized draw `z = mu + exp(0.5 * logvar) * eps`."""
    eps = as_tensor(eps)
    return mu + exp(logvar * 0.5) * eps
