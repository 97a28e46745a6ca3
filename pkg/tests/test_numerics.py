#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test the tensor primitives, the tape, and `gradcheck`.
"""

import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from pclc.numerics import (
    Tensor, Tape, backward, gradcheck, no_grad,
    ShapeError, NumericalError, TapeError,
)
import pclc.numerics as nx
from tests import debug


def _rand(rng, *shape):
    return Tensor(rng.standard_normal(shape))


def test_softmax_uniform():
    out = nx.softmax(Tensor([0.0, 0.0, 0.0]))
    assert np.allclose(out.values, [1 / 3, 1 / 3, 1 / 3], atol=1e-15)


def test_sigmoid_zero():
    assert nx.sigmoid(Tensor(0.0)).item() == 0.5


def test_matmul_hand_example():
    out = nx.matmul(Tensor([[1, 2], [3, 4]]), Tensor([[5], [6]]))
    assert out.values.tolist() == [[17.0], [39.0]]


@pytest.mark.parametrize(
    'op,a_shape,b_shape',
    [
        ('matmul', (2, 3), (2, 3)),
        ('add', (2, 3), (3, 2)),
        ('mul', (2, 3), (3,)),
        ('sub', (4,), (3,)),
    ]
)
def test_shape_errors_name_op(op, a_shape, b_shape):
    with pytest.raises(ShapeError) as exc:
        getattr(nx, op)(Tensor(np.ones(a_shape)), Tensor(np.ones(b_shape)))
    assert op in str(exc.value)
    assert str(a_shape) in str(exc.value)


def test_concat_off_axis_mismatch():
    with pytest.raises(ShapeError):
        nx.concat([Tensor(np.ones((2, 3))), Tensor(np.ones((3, 2)))], axis=0)


def test_non_finite_output_raises():
    with pytest.raises(NumericalError):
        nx.exp(Tensor([1000.0]))


def test_log_clamps_input():
    assert nx.log(Tensor([0.0])).item() == pytest.approx(math.log(1e-12))


def test_sum_gradient_is_ones():
    x = Tensor(np.arange(6.0).reshape(2, 3), requires_grad=True)
    with Tape():
        y = x.sum()
    backward(y, debug=debug)
    assert np.array_equal(x.grad, np.ones((2, 3)))
    assert y.grad.tolist() == 1.0


def test_sigmoid_gradient_at_zero():
    x = Tensor(0.0, requires_grad=True)
    with Tape():
        y = nx.sigmoid(x)
    backward(y)
    assert float(x.grad) == pytest.approx(0.25, abs=1e-15)


def test_backward_twice_raises():
    x = Tensor([1.0, 2.0], requires_grad=True)
    with Tape():
        y = (x * x).sum()
    backward(y)
    with pytest.raises(TapeError):
        backward(y)


def test_backward_non_scalar_raises():
    x = Tensor([1.0, 2.0], requires_grad=True)
    with Tape():
        y = x * x
    with pytest.raises(ShapeError):
        backward(y)


def test_untracked_loss_raises():
    with pytest.raises(TapeError):
        backward(Tensor(1.0))


def test_unreached_leaf_gets_zero_gradient():
    x = Tensor([1.0], requires_grad=True)
    unused = Tensor([2.0], requires_grad=True)
    with Tape():
        _ = nx.tanh(unused)
        y = (x * x).sum()
    backward(y)
    assert unused.grad.tolist() == [0.0]
    assert x.grad.tolist() == [2.0]


def test_gradients_accumulate_across_tapes():
    x = Tensor([3.0], requires_grad=True)
    for _ in range(2):
        with Tape():
            y = (x * x).sum()
        backward(y)
    assert x.grad.tolist() == [12.0]


def test_no_tape_records_nothing():
    x = Tensor([1.0], requires_grad=True)
    y = x * x
    assert not y.requires_grad
    with Tape() as tape:
        with no_grad():
            _ = x * x
    assert len(tape) == 0


def test_gradcheck_square():
    assert gradcheck(lambda x: (x * x).sum(), Tensor(3.0)) < 1e-8


def test_gradcheck_reports_non_finite():
    assert gradcheck(lambda x: nx.exp(x * 1000.0).sum(), Tensor([1.0])) == math.inf


@pytest.mark.parametrize(
    'name,build',
    [
        ('add_bias', lambda rng: ((lambda a, b: nx.add(a, b).sum()), [_rand(rng, 3, 4), _rand(rng, 4)])),
        ('sub', lambda rng: ((lambda a, b: (nx.sub(a, b) * nx.sub(a, b)).sum()), [_rand(rng, 2, 3), _rand(rng, 2, 3)])),
        ('mul', lambda rng: ((lambda a, b: nx.mul(a, b).sum()), [_rand(rng, 5), _rand(rng, 5)])),
        ('matmul', lambda rng: ((lambda a, b: nx.tanh(a @ b).sum()), [_rand(rng, 3, 4), _rand(rng, 4, 2)])),
        ('matmul_shared', lambda rng: ((lambda a, b: nx.tanh(a @ b).sum()), [_rand(rng, 2, 3, 4), _rand(rng, 4, 2)])),
        ('matmul_batched', lambda rng: ((lambda a, b: nx.tanh(a @ b).sum()), [_rand(rng, 2, 3, 4), _rand(rng, 2, 4, 2)])),
        ('mean_axis', lambda rng: ((lambda a: nx.tanh(a.mean(axis=1)).sum()), [_rand(rng, 3, 4)])),
        ('sum_axes', lambda rng: ((lambda a: nx.tanh(a.sum(axis=(0, 2))).sum()), [_rand(rng, 2, 3, 4)])),
        ('relu', lambda rng: ((lambda a: (nx.relu(a) * nx.relu(a)).sum()), [Tensor(rng.uniform(0.1, 1, 5) * rng.choice([-1, 1], 5))])),
        ('sigmoid', lambda rng: ((lambda a: nx.sigmoid(a * 3.0).sum()), [_rand(rng, 6)])),
        ('softmax', lambda rng: ((lambda a, w: (nx.softmax(a, axis=-1) * w).sum()), [_rand(rng, 3, 4), _rand(rng, 3, 4)])),
        ('exp_log', lambda rng: ((lambda a: nx.log(nx.exp(a) + 1.0).sum()), [_rand(rng, 4)])),
        ('layer_norm', lambda rng: ((lambda a, g, b, w: (nx.layer_norm(a, g, b) * w).sum()), [_rand(rng, 3, 5), _rand(rng, 5), _rand(rng, 5), _rand(rng, 3, 5)])),
        ('slice', lambda rng: ((lambda a: nx.tanh(a[:, 1:3]).sum()), [_rand(rng, 3, 4)])),
        ('concat', lambda rng: ((lambda a, b: nx.tanh(nx.concat([a, b], axis=1)).sum()), [_rand(rng, 2, 3), _rand(rng, 2, 1)])),
        ('reshape_transpose', lambda rng: ((lambda a, w: (a.reshape(4, 3).transpose() * w).sum()), [_rand(rng, 2, 6), _rand(rng, 3, 4)])),
        ('gather', lambda rng: ((lambda a: nx.tanh(nx.gather(a, [0, 2, 2, 1], axis=1)).sum()), [_rand(rng, 2, 3, 2)])),
        ('broadcast_to', lambda rng: ((lambda a, w: (nx.broadcast_to(a, (3, 2, 4)) * w).sum()), [_rand(rng, 2, 4), _rand(rng, 3, 2, 4)])),
        ('clip', lambda rng: ((lambda a: nx.clip(a, -0.5, 0.5).sum()), [Tensor([-1.0, -0.2, 0.3, 2.0])])),
    ]
)
@pytest.mark.parametrize('seed', list(range(10)))
def test_primitive_gradcheck(name, build, seed):
    rng = np.random.default_rng(seed)
    function, inputs = build(rng)
    assert gradcheck(function, inputs, debug=False) < 1e-4, name


def test_composite_mlp_gradcheck():
    rng = np.random.default_rng(7)
    w1, b1 = _rand(rng, 4, 8), _rand(rng, 8)
    w2, b2 = _rand(rng, 8, 1), _rand(rng, 1)
    x = _rand(rng, 5, 4)

    def mlp(x, w1, b1, w2, b2):
        h = nx.relu(nx.add(x @ w1, b1))
        return nx.tanh(nx.add(h @ w2, b2)).mean()

    assert gradcheck(mlp, [x, w1, b1, w2, b2]) < 1e-4


def test_forward_is_deterministic():
    rng = np.random.default_rng(3)
    a, b = _rand(rng, 4, 6), _rand(rng, 6, 3)
    first = nx.softmax(nx.tanh(a @ b), axis=-1).values
    second = nx.softmax(nx.tanh(a @ b), axis=-1).values
    assert first.tobytes() == second.tobytes()


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (3, 5), elements=st.floats(-50, 50, allow_nan=False)))
def test_softmax_rows_sum_to_one(values):
    out = nx.softmax(Tensor(values), axis=-1).values
    assert np.all(out >= 0.0)
    assert np.allclose(out.sum(axis=-1), 1.0, atol=1e-12, rtol=0.0)
