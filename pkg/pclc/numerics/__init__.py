#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Dense float64 tensors with reverse-mode automatic differentiation.

```
>>> from pclc.numerics import Tensor, Tape, backward, sigmoid
>>> x = Tensor(0.0, requires_grad=True)
>>> with Tape():
...     y = sigmoid(x)
>>> backward(y)
>>> float(x.grad)
0.25
```
"""

from pclc.numerics._errors import ShapeError, NumericalError, TapeError
from pclc.numerics._tensor import Tensor, as_tensor
from pclc.numerics._tape import Tape, no_grad, get_active_tape
from pclc.numerics._ops import (
    add,
    sub,
    add_scalar,
    mul,
    scale,
    neg,
    matmul,
    sum,
    mean,
    relu,
    tanh,
    sigmoid,
    softmax,
    exp,
    log,
    clip,
    layer_norm,
    getitem,
    concat,
    stack,
    reshape,
    transpose,
    gather,
    broadcast_to,
)
from pclc.numerics._backward import backward
from pclc.numerics._gradcheck import gradcheck

__all__ = (
    'Tensor', 'Tape', 'backward', 'gradcheck', 'no_grad', 'as_tensor', 'get_active_tape',
    'ShapeError', 'NumericalError', 'TapeError',
    'add', 'sub', 'add_scalar', 'mul', 'scale', 'neg', 'matmul', 'sum', 'mean',
    'relu', 'tanh', 'sigmoid', 'softmax', 'exp', 'log', 'clip', 'layer_norm',
    'getitem', 'concat', 'stack', 'reshape', 'transpose', 'gather', 'broadcast_to',
)
