#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Assemble the prediction network for each variant.
"""

from __future__ import annotations
from dataclasses import dataclass
import numpy as np
from pclc.numerics import Tensor, as_tensor, concat
from pclc.utils.typing import Any, Dict, List, Optional, Union
from pclc.model._config import ModelConfig, Variant
from pclc.model._module import Module
from pclc.model._layers import MLP
from pclc.model._encoder import HistoryEncoder, GaussianHead, sample_latent
from pclc.model._interaction import InteractionModule
from pclc.model._decoder import TransformerDecoder, MLPDecoder, RecurrentDecoder


@dataclass
class ForwardOutput:
    """
    Everything one forward pass produces.

    `mu`, `logvar` and `z` are `None` for variants without a latent;
    `B_hat` is `None` without the interaction module.
    """
    Y_hat: Tensor
    h: Tensor
    mu: Optional[Tensor] = None
    logvar: Optional[Tensor] = None
    z: Optional[Tensor] = None
    B_hat: Optional[Tensor] = None


class TrajectoryModel(Module):
    """
    History encoder, optional Gaussian latent, optional interaction module, and a decoder.

    The fused context is `MLP(concat(flatten(X), c, B_hat))` where `c` is the
    latent sample for latent variants and the history encoding otherwise.

    Parameters
    ----------
    config: Union[ModelConfig, Dict[str, Any], None], default None
        Hyperparameters and the variant.

    seed: int, default 0
        Seeds the parameter initialization.
    """

    def __init__(self, config: Union[ModelConfig, Dict[str, Any], None] = None, seed: int = 0):
        super().__init__()
        if not isinstance(config, ModelConfig):
            config = ModelConfig(**(config or {}))
        self.config = config
        self.seed = seed
        self.variant = Variant(config.variant)
        c = config
        rng = np.random.default_rng(seed)
        self.add_module('encoder', HistoryEncoder(c.n_vehicles, c.n_features, c.d_h, c.mlp_hidden, rng))

        if self.variant.latent:
            self.add_module('latent', GaussianHead(c.d_h, c.d_z, rng, c.logvar_min, c.logvar_max))
        if self.variant.interaction:
            self.add_module('interaction', InteractionModule(
                c.t_obs, c.t_pre, c.heads, c.d_head, c.d_q, c.d_e, rng, literal=c.literal_aggregation,
            ))

        self.d_history = c.t_obs * c.n_vehicles * c.n_features
        if self.variant.decoder == 'gru':
            self.add_module('decoder', RecurrentDecoder(c.d_h, c.t_pre, rng))
            return
        d_cond = c.d_z if self.variant.latent else c.d_h
        d_in = self.d_history + d_cond + (c.t_pre if self.variant.interaction else 0)
        self.add_module('fusion', MLP([d_in, c.mlp_hidden, c.d_h], rng, final_activation=True))
        if self.variant.decoder == 'transformer':
            self.add_module('decoder', TransformerDecoder(
                c.d_h, c.t_pre, c.d_pos, c.d_trans, c.trans_layers, c.trans_heads, c.mlp_hidden, rng,
            ))
        else:
            self.add_module('decoder', MLPDecoder(c.d_h, c.t_pre, c.mlp_hidden, rng))

    @property
    def stochastic(self) -> bool:
        return self.variant.latent

    def draw_eps(self, batch: int, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal((batch, self.config.d_z))

    def forward(
            self,
            X,
            eps: Optional[np.ndarray] = None,
            rng: Optional[np.random.Generator] = None,
            B_hat: Optional[np.ndarray] = None,
        ) -> ForwardOutput:
        """
        Run one pass over a batch of normalized histories.

        Parameters
        ----------
        X: ArrayLike
            `(B, T_obs, 5, 5)` or a single `(T_obs, 5, 5)` history.

        eps: Optional[np.ndarray], default None
            Standard-normal draws `(B, d_z)` for the latent. Drawn from `rng` if omitted;
            with neither given the latent mean is used.

        rng: Optional[np.random.Generator], default None
            Source of `eps`.

        B_hat: Optional[np.ndarray], default None
            Replace the interaction module's output with fixed probabilities `(B, T_pre)`.

        Returns
        -------
        A `ForwardOutput`.
        """
        X = X.values if isinstance(X, Tensor) else np.asarray(X, dtype=np.float64)
        if X.ndim == 3:
            X = X[None]
        batch = X.shape[0]
        h = self.encoder(X)
        out = ForwardOutput(Y_hat=None, h=h)

        if self.variant.decoder == 'gru':
            out.Y_hat = self.decoder(h)
            return out

        parts: List[Tensor] = [Tensor(X.reshape(batch, self.d_history))]
        if self.variant.latent:
            out.mu, out.logvar = self.latent(h)
            if eps is None:
                eps = self.draw_eps(batch, rng) if rng is not None else np.zeros((batch, self.config.d_z))
            out.z = sample_latent(out.mu, out.logvar, eps)
            parts.append(out.z)
        else:
            parts.append(h)
        if self.variant.interaction:
            out.B_hat = self.interaction(X) if B_hat is None else as_tensor(np.broadcast_to(
                np.asarray(B_hat, dtype=np.float64), (batch, self.config.t_pre)
            ))
            parts.append(out.B_hat)

        out.Y_hat = self.decoder(self.fusion(concat(parts, axis=-1)))
        return out

    __call__ = forward

    def predict(self, X, k: int = 1, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """
        Sample `k` trajectories per history without recording gradients.

        Returns
        -------
        An array `(k, B, T_pre, 2)` of normalized positions.
        """
        from pclc.numerics import no_grad
        X = np.asarray(X.values if isinstance(X, Tensor) else X, dtype=np.float64)
        if X.ndim == 3:
            X = X[None]
        samples = []
        with no_grad():
            for _ in range(k):
                samples.append(self.forward(X, rng=rng).Y_hat.values)
        return np.stack(samples)

    def __repr__(self) -> str:
        return f"TrajectoryModel(variant={self.variant.value}, parameters={self.num_parameters()})"


def build_model(variant: Union[Variant, str, None] = None, config: Optional[Dict[str, Any]] = None, seed: int = 0) -> TrajectoryModel:
    """
    Construct a network for `variant` with hyperparameters from `config`
    (falling back to `get_config('model')`).

    Raises
    ------
    `ValueError` for an unknown variant tag.
    """
    config = dict(config or {})
    if variant is not None:
        try:
            config['variant'] = Variant(str(variant.value if isinstance(variant, Variant) else variant).upper())
        except ValueError:
            from pclc.utils.warnings import error
            error(f"Unknown variant '{variant}'. Choose one of {[v.value for v in Variant]}.", ValueError)
    return TrajectoryModel(ModelConfig(**config), seed=seed)
