#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Training objectives: reconstruction, KL to the standard normal,
yield cross-entropy, and their weighted sum.
"""

from __future__ import annotations
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pclc.numerics import Tensor, as_tensor, clip, exp, log
from pclc.utils.typing import Dict, Optional, Tuple, Union

BCE_CLAMP = 1e-7


def _batch_size(t: Tensor, event_ndim: int) -> int:
    """Leading batch size `M`, or 1 for an unbatched input."""
    return t.shape[0] if t.ndim > event_ndim else 1


def loss_reconstruction(Y, Y_hat) -> Tensor:
    """`(1 / M) * sum over the batch and steps of |Y_t - Y_hat_t|^2`."""
    Y, Y_hat = as_tensor(Y), as_tensor(Y_hat)
    diff = Y_hat - Y
    return (diff * diff).sum() / _batch_size(Y_hat, 2)


def loss_kl(mu, logvar) -> Tensor:
    """Closed-form `KL(N(mu, exp(logvar)) || N(0, I))`, summed over the latent and averaged over the batch."""
    mu, logvar = as_tensor(mu), as_tensor(logvar)
    terms = mu * mu + exp(logvar) - logvar - 1.0
    return terms.sum() * 0.5 / _batch_size(mu, 1)


def loss_interaction(B, B_hat) -> Tensor:
    """
    Binary cross-entropy summed over steps and averaged over the batch.
    `B_hat` is clamped to `[1e-7, 1 - 1e-7]`.
    """
    B, B_hat = as_tensor(B), as_tensor(B_hat)
    p = clip(B_hat, BCE_CLAMP, 1.0 - BCE_CLAMP)
    ones = Tensor(np.ones(B.shape))
    terms = B * log(p) + (ones - B) * log(1.0 - p)
    return -terms.sum() / _batch_size(B_hat, 1)


class LossWeights(BaseModel):
    """Non-negative weights `(w1, w2, w3)` of the reconstruction, KL, and interaction terms."""
    model_config = ConfigDict(frozen=True)

    w1: float = Field(1.0, ge=0.0)
    w2: float = Field(0.5, ge=0.0)
    w3: float = Field(1.0, ge=0.0)

    @model_validator(mode='after')
    def _any_positive(self) -> 'LossWeights':
        if not (self.w1 > 0 or self.w2 > 0 or self.w3 > 0):
            raise ValueError("At least one loss weight must be positive.")
        return self

    @classmethod
    def from_value(cls, value: Union['LossWeights', Dict[str, float], Tuple[float, float, float], None]) -> 'LossWeights':
        if value is None or isinstance(value, cls):
            return value or cls()
        if isinstance(value, dict):
            return cls(**value)
        w1, w2, w3 = value
        return cls(w1=w1, w2=w2, w3=w3)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.w1, self.w2, self.w3)


def loss_total(
        Lp: Tensor,
        Lkl: Optional[Tensor],
        Lint: Optional[Tensor],
        weights: Union[LossWeights, Tuple[float, float, float]],
    ) -> Tensor:
    """`w1 * Lp + w2 * Lkl + w3 * Lint`; absent terms count as zero."""
    weights = LossWeights.from_value(weights)
    total = as_tensor(Lp) * weights.w1
    if Lkl is not None:
        total = total + as_tensor(Lkl) * weights.w2
    if Lint is not None:
        total = total + as_tensor(Lint) * weights.w3
    return total


def composite_loss(output, Y, B, weights) -> Tuple[Tensor, Dict[str, Tensor]]:
    """
    Evaluate every term that applies to a `ForwardOutput` and their weighted sum.

    Terms whose weight is zero are still reported but do not reach the total.

    Returns
    -------
    A tuple of the total and a dictionary `{'Lp', 'Lkl', 'Lint'}` (missing terms are omitted).
    """
    weights = LossWeights.from_value(weights)
    terms: Dict[str, Tensor] = {'Lp': loss_reconstruction(Y, output.Y_hat)}
    if output.mu is not None:
        terms['Lkl'] = loss_kl(output.mu, output.logvar)
    if output.B_hat is not None:
        terms['Lint'] = loss_interaction(B, output.B_hat)
    total = loss_total(
        terms['Lp'],
        terms.get('Lkl') if weights.w2 > 0 else None,
        terms.get('Lint') if weights.w3 > 0 else None,
        weights,
    )
    return total, terms
