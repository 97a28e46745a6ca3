#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test the training objectives against closed forms and loop oracles.
"""

import math
import numpy as np
import pytest

from pclc.numerics import Tensor
from pclc.model import (
    LossWeights, loss_reconstruction, loss_kl, loss_interaction, loss_total,
    composite_loss, ForwardOutput,
)


def _reconstruction_oracle(Y, Y_hat):
    total = 0.0
    for m in range(Y.shape[0]):
        for t in range(Y.shape[1]):
            total += (Y[m, t, 0] - Y_hat[m, t, 0]) ** 2 + (Y[m, t, 1] - Y_hat[m, t, 1]) ** 2
    return total / Y.shape[0]


def _interaction_oracle(B, B_hat):
    total = 0.0
    for m in range(B.shape[0]):
        for t in range(B.shape[1]):
            p = min(max(B_hat[m, t], 1e-7), 1.0 - 1e-7)
            total += B[m, t] * math.log(p) + (1.0 - B[m, t]) * math.log(1.0 - p)
    return -total / B.shape[0]


def test_reconstruction_known_value():
    Y = np.zeros((1, 2, 2))
    Y_hat = np.array([[[3.0, 4.0], [1.0, 0.0]]])
    assert loss_reconstruction(Y, Y_hat).item() == 26.0


def test_kl_standard_normal_is_zero():
    assert loss_kl(np.zeros((3, 4)), np.zeros((3, 4))).item() == 0.0


def test_kl_known_value():
    ### KL(N(1, e) || N(0, 1)) = 0.5 * (1 + e - 1 - 1)
    value = loss_kl(Tensor([[1.0]]), Tensor([[1.0]])).item()
    assert abs(value - 0.5 * (math.e - 1.0)) < 1e-15


def test_interaction_half_probability():
    B = np.array([[1.0, 0.0]])
    value = loss_interaction(B, np.full((1, 2), 0.5)).item()
    assert abs(value - 2.0 * math.log(2.0)) < 1e-15


def test_interaction_clamps_certain_mistakes():
    value = loss_interaction(np.array([[1.0]]), np.array([[0.0]])).item()
    assert math.isfinite(value)
    assert abs(value + math.log(1e-7)) < 1e-9


@pytest.mark.parametrize('seed', range(100))
def test_losses_match_loop_oracles(seed):
    rng = np.random.default_rng(seed)
    m, t = int(rng.integers(1, 5)), int(rng.integers(1, 8))
    Y = rng.standard_normal((m, t, 2))
    Y_hat = rng.standard_normal((m, t, 2))
    B = (rng.random((m, t)) < 0.5).astype(float)
    B_hat = rng.random((m, t))
    assert abs(loss_reconstruction(Y, Y_hat).item() - _reconstruction_oracle(Y, Y_hat)) < 1e-12
    assert abs(loss_interaction(B, B_hat).item() - _interaction_oracle(B, B_hat)) < 1e-12


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(10))
def test_kl_matches_monte_carlo(seed):
    rng = np.random.default_rng(seed)
    mu = rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 2.0)
    sigma = rng.uniform(0.5, 1.5)
    eps = rng.standard_normal(500_000)
    ### Antithetic pairs cancel the term linear in eps.
    eps = np.concatenate([eps, -eps])
    z = mu + sigma * eps
    ### E_q[log q(z) - log p(z)]
    log_q = -0.5 * eps ** 2 - math.log(sigma)
    log_p = -0.5 * z ** 2
    mc = float(np.mean(log_q - log_p))
    closed = loss_kl(Tensor([[mu]]), Tensor([[2.0 * math.log(sigma)]])).item()
    assert abs(mc - closed) <= 0.01 * closed


def test_unbatched_inputs_count_as_one():
    Y = np.ones((3, 2))
    assert loss_reconstruction(Y, np.zeros((3, 2))).item() == 6.0
    assert loss_kl(np.ones(2), np.zeros(2)).item() == 1.0


def test_loss_total_weights():
    total = loss_total(Tensor(2.0), Tensor(4.0), Tensor(8.0), (1.0, 0.5, 0.25))
    assert total.item() == 6.0
    assert loss_total(Tensor(2.0), None, None, (1.0, 0.5, 0.25)).item() == 2.0


@pytest.mark.parametrize(
    'value,valid',
    [
        ((1.0, 0.5, 1.0), True),
        ((0.0, 0.0, 1.0), True),
        ((0.0, 0.0, 0.0), False),
        ((-1.0, 0.5, 1.0), False),
        ({'w1': 1.0, 'w2': 0.0, 'w3': 0.0}, True),
    ]
)
def test_loss_weights_validation(value, valid):
    if valid:
        assert LossWeights.from_value(value).w1 >= 0.0
    else:
        with pytest.raises(ValueError):
            LossWeights.from_value(value)


def test_composite_loss_skips_zero_weighted_terms():
    out = ForwardOutput(
        Y_hat = Tensor(np.ones((1, 2, 2))),
        h = Tensor(np.zeros((1, 3))),
        mu = Tensor(np.ones((1, 2))),
        logvar = Tensor(np.zeros((1, 2))),
        B_hat = Tensor(np.full((1, 2), 0.5)),
    )
    total, terms = composite_loss(out, np.zeros((1, 2, 2)), np.ones((1, 2)), (1.0, 0.0, 0.0))
    assert set(terms) == {'Lp', 'Lkl', 'Lint'}
    assert total.item() == terms['Lp'].item() == 4.0
