#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Adam and global-norm gradient clipping over `Tensor` parameters.
"""

from __future__ import annotations
import math
import numpy as np
from pclc.numerics import Tensor
from pclc.utils.typing import List, Sequence


def global_norm(params: Sequence[Tensor]) -> float:
    """Euclidean norm of all gradients taken together (missing gradients count as zero)."""
    return math.sqrt(sum(float(np.sum(p.grad * p.grad)) for p in params if p.grad is not None))


def clip_grad_norm(params: Sequence[Tensor], max_norm: float) -> float:
    """
    Rescale gradients in place so their global norm is at most `max_norm`.

    Returns
    -------
    The norm before clipping.
    """
    norm = global_norm(params)
    if norm > max_norm:
        factor = max_norm / norm
        for p in params:
            if p.grad is not None:
                p.grad = p.grad * factor
    return norm


class Adam:
    """
    Adam with bias correction.

    Parameters
    ----------
    params: Sequence[Tensor]
        Leaves updated in place from their `.grad`.
    """

    def __init__(
            self,
            params: Sequence[Tensor],
            lr: float = 1e-3,
            beta1: float = 0.9,
            beta2: float = 0.999,
            eps: float = 1e-8,
        ):
        self.params: List[Tensor] = list(params)
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.t = 0
        self.m = [np.zeros(p.shape) for p in self.params]
        self.v = [np.zeros(p.shape) for p in self.params]

    def step(self) -> None:
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for p, m, v in zip(self.params, self.m, self.v):
            if p.grad is None:
                continue
            m *= self.beta1
            m += (1.0 - self.beta1) * p.grad
            v *= self.beta2
            v += (1.0 - self.beta2) * p.grad * p.grad
            p.values -= self.lr * (m / c1) / (np.sqrt(v / c2) + self.eps)

    def zero_grad(self) -> None:
        for p in self.params:
            p.zero_grad()
