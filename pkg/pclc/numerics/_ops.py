#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Primitive tensor operations with their local derivatives.

Each op computes its forward value with numpy, rejects non-finite output,
and records a node on the active tape when any input requires a gradient.
Broadcasting is limited to adding a 1-D bias along the last axis;
every other shape change goes through an explicit op (`reshape`, `broadcast_to`, ...).
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import Callable, List, Optional, Sequence, Tuple, Union
from pclc.utils.warnings import error
from pclc.numerics._errors import ShapeError, NumericalError
from pclc.numerics._tape import get_active_tape
from pclc.numerics._tensor import Tensor, as_tensor

LOG_FLOOR = 1e-12
Axis = Optional[Union[int, Sequence[int]]]


def _shape_error(op: str, *tensors) -> None:
    shapes = ', '.join(str(tuple(t.shape)) for t in tensors)
    error(f"Shape mismatch in '{op}': {shapes}.", ShapeError)


def _result(op: str, values: np.ndarray, inputs: Tuple[Tensor, ...], backward_fn: Callable) -> Tensor:
    if not np.all(np.isfinite(values)):
        shapes = ', '.join(str(tuple(t.shape)) for t in inputs)
        error(f"Operation '{op}' produced non-finite values (input shapes {shapes}).", NumericalError)
    tape = get_active_tape()
    record = tape is not None and any(t.requires_grad for t in inputs)
    out = Tensor._wrap(values, requires_grad=record)
    if record:
        tape.record(op, out, inputs, backward_fn)
    return out


def _is_bias(a: Tensor, b: Tensor) -> bool:
    return b.ndim == 1 and a.ndim >= 1 and a.shape[-1] == b.shape[0] and a.ndim > 1


def _reduce_bias(g: np.ndarray) -> np.ndarray:
    return g.reshape(-1, g.shape[-1]).sum(axis=0)


def add(a, b) -> Tensor:
    """Elementwise sum of equal shapes, or an N-D tensor plus a 1-D bias on the last axis."""
    a, b = as_tensor(a), as_tensor(b)
    if a.shape == b.shape:
        return _result('add', a.values + b.values, (a, b), lambda g: (g, g))
    if _is_bias(a, b):
        return _result('add', a.values + b.values, (a, b), lambda g: (g, _reduce_bias(g)))
    _shape_error('add', a, b)


def sub(a, b) -> Tensor:
    """Elementwise difference with the same shape rules as `add`."""
    a, b = as_tensor(a), as_tensor(b)
    if a.shape == b.shape:
        return _result('sub', a.values - b.values, (a, b), lambda g: (g, -g))
    if _is_bias(a, b):
        return _result('sub', a.values - b.values, (a, b), lambda g: (g, -_reduce_bias(g)))
    _shape_error('sub', a, b)


def add_scalar(a, c: float) -> Tensor:
    a = as_tensor(a)
    return _result('add_scalar', a.values + c, (a,), lambda g: (g,))


def mul(a, b) -> Tensor:
    """Elementwise product of two tensors with identical shapes."""
    a, b = as_tensor(a), as_tensor(b)
    if a.shape != b.shape:
        _shape_error('mul', a, b)
    av, bv = a.values, b.values
    return _result('mul', av * bv, (a, b), lambda g: (g * bv, g * av))


def scale(a, c: float) -> Tensor:
    a = as_tensor(a)
    return _result('scale', a.values * c, (a,), lambda g: (g * c,))


def neg(a) -> Tensor:
    a = as_tensor(a)
    return _result('neg', -a.values, (a,), lambda g: (-g,))


def matmul(a, b) -> Tensor:
    """
    Matrix product.

    Supported forms:
    - `(m, k) @ (k, n)`
    - `(..., m, k) @ (k, n)`: a shared weight matrix applied to a batch.
    - `(..., m, k) @ (..., k, n)`: batched product with identical leading dimensions.
    """
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        _shape_error('matmul', a, b)
    av, bv = a.values, b.values
    if b.ndim == 2:
        def _backward(g):
            ga = g @ bv.T
            gb = av.reshape(-1, av.shape[-1]).T @ g.reshape(-1, g.shape[-1])
            return ga, gb
    elif a.shape[:-2] == b.shape[:-2]:
        def _backward(g):
            return g @ np.swapaxes(bv, -1, -2), np.swapaxes(av, -1, -2) @ g
    else:
        _shape_error('matmul', a, b)
    return _result('matmul', av @ bv, (a, b), _backward)


def _expand_reduced(g: np.ndarray, shape: Tuple[int, ...], axis: Axis, keepdims: bool) -> np.ndarray:
    if axis is None:
        return np.broadcast_to(np.reshape(g, (1,) * len(shape)), shape)
    axes = (axis,) if isinstance(axis, int) else tuple(axis)
    axes = tuple(ax % len(shape) for ax in axes)
    if not keepdims:
        for ax in sorted(axes):
            g = np.expand_dims(g, ax)
    return np.broadcast_to(g, shape)


def sum(a, axis: Axis = None, keepdims: bool = False) -> Tensor:
    a = as_tensor(a)
    shape = a.shape
    return _result(
        'sum',
        np.sum(a.values, axis=axis if axis is None or isinstance(axis, int) else tuple(axis), keepdims=keepdims),
        (a,),
        lambda g: (np.array(_expand_reduced(g, shape, axis, keepdims)),),
    )


def mean(a, axis: Axis = None, keepdims: bool = False) -> Tensor:
    a = as_tensor(a)
    shape = a.shape
    if axis is None:
        count = a.size
    else:
        axes = (axis,) if isinstance(axis, int) else tuple(axis)
        count = int(np.prod([shape[ax] for ax in axes]))
    return _result(
        'mean',
        np.mean(a.values, axis=axis if axis is None or isinstance(axis, int) else tuple(axis), keepdims=keepdims),
        (a,),
        lambda g: (np.array(_expand_reduced(g, shape, axis, keepdims)) / count,),
    )


def relu(a) -> Tensor:
    a = as_tensor(a)
    mask = a.values > 0
    return _result('relu', np.where(mask, a.values, 0.0), (a,), lambda g: (g * mask,))


def tanh(a) -> Tensor:
    a = as_tensor(a)
    out = np.tanh(a.values)
    return _result('tanh', out, (a,), lambda g: (g * (1.0 - out * out),))


def sigmoid(a) -> Tensor:
    a = as_tensor(a)
    x = a.values
    e = np.exp(-np.abs(x))
    out = np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    return _result('sigmoid', out, (a,), lambda g: (g * out * (1.0 - out),))


def softmax(a, axis: int = -1) -> Tensor:
    """Softmax along `axis`, shifted by the maximum for stability."""
    a = as_tensor(a)
    shifted = a.values - np.max(a.values, axis=axis, keepdims=True)
    e = np.exp(shifted)
    out = e / np.sum(e, axis=axis, keepdims=True)

    def _backward(g):
        return (out * (g - np.sum(g * out, axis=axis, keepdims=True)),)

    return _result('softmax', out, (a,), _backward)


def exp(a) -> Tensor:
    a = as_tensor(a)
    with np.errstate(over='ignore'):
        out = np.exp(a.values)
    return _result('exp', out, (a,), lambda g: (g * out,))


def log(a) -> Tensor:
    """Natural logarithm with the input clamped to at least 1e-12."""
    a = as_tensor(a)
    clamped = np.maximum(a.values, LOG_FLOOR)
    mask = a.values >= LOG_FLOOR
    return _result('log', np.log(clamped), (a,), lambda g: (g * mask / clamped,))


def clip(a, low: float, high: float) -> Tensor:
    a = as_tensor(a)
    mask = (a.values >= low) & (a.values <= high)
    return _result('clip', np.clip(a.values, low, high), (a,), lambda g: (g * mask,))


def layer_norm(a, gain=None, bias=None, eps: float = 1e-5) -> Tensor:
    """
    Normalize over the last axis, then apply an optional gain and bias.

    Parameters
    ----------
    a: Tensor
        Input of shape `(..., d)`.

    gain: Optional[Tensor], default None
        Per-feature scale of shape `(d,)`.

    bias: Optional[Tensor], default None
        Per-feature shift of shape `(d,)`.
    """
    a = as_tensor(a)
    d = a.shape[-1]
    inputs = [a]
    for p in (gain, bias):
        if p is not None:
            p = as_tensor(p)
            if p.shape != (d,):
                _shape_error('layer_norm', a, p)
            inputs.append(p)
    gain = as_tensor(gain) if gain is not None else None
    bias = as_tensor(bias) if bias is not None else None

    mu = a.values.mean(axis=-1, keepdims=True)
    centered = a.values - mu
    var = (centered * centered).mean(axis=-1, keepdims=True)
    inv_std = 1.0 / np.sqrt(var + eps)
    xhat = centered * inv_std
    out = xhat
    if gain is not None:
        out = out * gain.values
    if bias is not None:
        out = out + bias.values

    def _backward(g):
        dxhat = g * gain.values if gain is not None else g
        dx = inv_std * (
            dxhat
            - dxhat.mean(axis=-1, keepdims=True)
            - xhat * (dxhat * xhat).mean(axis=-1, keepdims=True)
        )
        grads = [dx]
        if gain is not None:
            grads.append(_reduce_bias(g * xhat))
        if bias is not None:
            grads.append(_reduce_bias(g))
        return tuple(grads)

    return _result('layer_norm', out, tuple(inputs), _backward)


def getitem(a, index) -> Tensor:
    """Slice or index a tensor with numpy indexing rules."""
    a = as_tensor(a)
    if isinstance(index, Tensor):
        _shape_error('getitem', a, index)
    shape = a.shape
    try:
        out = np.array(a.values[index])
    except IndexError as e:
        error(f"Invalid index for 'getitem' on shape {shape}: {e}", ShapeError)

    advanced = any(
        isinstance(i, (list, np.ndarray))
        for i in (index if isinstance(index, tuple) else (index,))
    )

    def _backward(g):
        z = np.zeros(shape)
        if advanced:
            np.add.at(z, index, g)
        else:
            z[index] += g
        return (z,)

    return _result('getitem', out, (a,), _backward)


def concat(tensors: Sequence, axis: int = 0) -> Tensor:
    """Join tensors along `axis`; all other dimensions must agree."""
    tensors = tuple(as_tensor(t) for t in tensors)
    if not tensors:
        error("concat needs at least one tensor.", ShapeError)
    ndim = tensors[0].ndim
    ax = axis % ndim if ndim else 0
    for t in tensors:
        if t.ndim != ndim or t.shape[:ax] + t.shape[ax + 1:] != tensors[0].shape[:ax] + tensors[0].shape[ax + 1:]:
            _shape_error('concat', *tensors)
    sizes = [t.shape[ax] for t in tensors]
    splits = np.cumsum(sizes)[:-1]

    def _backward(g):
        return tuple(np.split(g, splits, axis=ax))

    return _result('concat', np.concatenate([t.values for t in tensors], axis=ax), tensors, _backward)


def reshape(a, shape: Sequence[int]) -> Tensor:
    a = as_tensor(a)
    old = a.shape
    try:
        out = a.values.reshape(tuple(shape))
    except ValueError:
        error(f"Shape mismatch in 'reshape': {old} -> {tuple(shape)}.", ShapeError)
    return _result('reshape', out, (a,), lambda g: (g.reshape(old),))


def transpose(a, axes: Optional[Sequence[int]] = None) -> Tensor:
    a = as_tensor(a)
    if axes is None:
        axes = tuple(reversed(range(a.ndim)))
    axes = tuple(axes)
    if sorted(ax % a.ndim for ax in axes) != list(range(a.ndim)):
        error(f"Invalid axes {axes} for 'transpose' on shape {a.shape}.", ShapeError)
    inverse = tuple(np.argsort(axes))
    return _result('transpose', np.transpose(a.values, axes), (a,), lambda g: (np.transpose(g, inverse),))


def gather(a, indices: Sequence[int], axis: int = 0) -> Tensor:
    """
    Select entries along `axis` with a 1-D integer index (repeats allowed).
    The backward pass scatter-adds into the selected positions.
    """
    a = as_tensor(a)
    idx = np.asarray(indices, dtype=np.int64)
    if idx.ndim != 1 or (idx.size and (idx.min() < -a.shape[axis] or idx.max() >= a.shape[axis])):
        error(f"Invalid indices for 'gather' on axis {axis} of shape {a.shape}.", ShapeError)
    shape = a.shape

    def _backward(g):
        z = np.zeros(shape)
        np.add.at(np.moveaxis(z, axis, 0), idx, np.moveaxis(g, axis, 0))
        return (z,)

    return _result('gather', np.take(a.values, idx, axis=axis), (a,), _backward)


def broadcast_to(a, shape: Sequence[int]) -> Tensor:
    """Explicitly repeat a tensor to `shape` (numpy broadcasting rules)."""
    a = as_tensor(a)
    shape = tuple(shape)
    old = a.shape
    try:
        out = np.array(np.broadcast_to(a.values, shape))
    except ValueError:
        error(f"Shape mismatch in 'broadcast_to': {old} -> {shape}.", ShapeError)
    lead = len(shape) - len(old)

    def _backward(g):
        g = g.sum(axis=tuple(range(lead))) if lead else g
        axes = tuple(i for i, n in enumerate(old) if n == 1 and g.shape[i] != 1)
        if axes:
            g = g.sum(axis=axes, keepdims=True)
        return (g.reshape(old),)

    return _result('broadcast_to', out, (a,), _backward)


def stack(tensors: Sequence, axis: int = 0) -> Tensor:
    """Stack equal-shape tensors along a new axis."""
    tensors = [as_tensor(t) for t in tensors]
    expanded = []
    for t in tensors:
        new_shape = list(t.shape)
        new_shape.insert(axis % (t.ndim + 1), 1)
        expanded.append(reshape(t, new_shape))
    return concat(expanded, axis=axis)
