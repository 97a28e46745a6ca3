#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Define the `Tensor` class, a float64 array with an optional gradient buffer.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import Any, Optional, Sequence, Tuple, Union


class Tensor:
    """
    A dense float64 array that can take part in reverse-mode differentiation.

    Parameters
    ----------
    values: ArrayLike
        The contents; always copied and converted to float64.

    requires_grad: bool, default False
        Leaves with `requires_grad=True` receive `.grad` after `backward()`.

    name: Optional[str], default None
        Label used in error messages and checkpoints.
    """

    __slots__ = ('values', 'grad', 'requires_grad', 'name', '_node', '_tape')
    __array_priority__ = 100

    def __init__(
        self,
        values: Any,
        requires_grad: bool = False,
        name: Optional[str] = None,
    ):
        self.values = np.array(values, dtype=np.float64)
        self.grad: Optional[np.ndarray] = None
        self.requires_grad = requires_grad
        self.name = name
        self._node = None
        self._tape = None

    @classmethod
    def _wrap(cls, values: np.ndarray, requires_grad: bool = False) -> 'Tensor':
        """Build a tensor around an already-computed array without copying."""
        t = cls.__new__(cls)
        t.values = values
        t.grad = None
        t.requires_grad = requires_grad
        t.name = None
        t._node = None
        t._tape = None
        return t

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    @property
    def ndim(self) -> int:
        return self.values.ndim

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def is_leaf(self) -> bool:
        return self._node is None

    def numpy(self) -> np.ndarray:
        """Return a copy of the values."""
        return self.values.copy()

    def item(self) -> float:
        if self.values.size != 1:
            from pclc.numerics._errors import ShapeError
            from pclc.utils.warnings import error
            error(f"item() needs a single-element tensor, not shape {self.shape}.", ShapeError)
        return float(self.values.reshape(-1)[0])

    def detach(self) -> 'Tensor':
        """Return a constant copy that is not connected to any tape."""
        return Tensor(self.values)

    def zero_grad(self) -> None:
        self.grad = None

    ### Operator sugar; every method delegates to a primitive in `_ops`.
    def __add__(self, other):
        from pclc.numerics import _ops
        if isinstance(other, (int, float)):
            return _ops.add_scalar(self, float(other))
        return _ops.add(self, other)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        from pclc.numerics import _ops
        if isinstance(other, (int, float)):
            return _ops.add_scalar(self, -float(other))
        return _ops.sub(self, other)

    def __rsub__(self, other):
        from pclc.numerics import _ops
        if isinstance(other, (int, float)):
            return _ops.add_scalar(_ops.neg(self), float(other))
        return _ops.sub(other, self)

    def __mul__(self, other):
        from pclc.numerics import _ops
        if isinstance(other, (int, float)):
            return _ops.scale(self, float(other))
        return _ops.mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        from pclc.numerics import _ops
        if isinstance(other, (int, float)):
            return _ops.scale(self, 1.0 / float(other))
        return NotImplemented

    def __neg__(self):
        from pclc.numerics import _ops
        return _ops.neg(self)

    def __matmul__(self, other):
        from pclc.numerics import _ops
        return _ops.matmul(self, other)

    def __getitem__(self, index):
        from pclc.numerics import _ops
        return _ops.getitem(self, index)

    def sum(self, axis: Optional[Union[int, Sequence[int]]] = None, keepdims: bool = False):
        from pclc.numerics import _ops
        return _ops.sum(self, axis=axis, keepdims=keepdims)

    def mean(self, axis: Optional[Union[int, Sequence[int]]] = None, keepdims: bool = False):
        from pclc.numerics import _ops
        return _ops.mean(self, axis=axis, keepdims=keepdims)

    def reshape(self, *shape):
        from pclc.numerics import _ops
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return _ops.reshape(self, shape)

    def transpose(self, *axes):
        from pclc.numerics import _ops
        if len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        return _ops.transpose(self, axes or None)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __repr__(self) -> str:
        label = f", name='{self.name}'" if self.name else ''
        grad = ', requires_grad=True' if self.requires_grad else ''
        return f"Tensor(shape={self.shape}{grad}{label})"


def as_tensor(value: Any) -> Tensor:
    """Return `value` if it is a tensor, else a constant tensor built from it."""
    if isinstance(value, Tensor):
        return value
    return Tensor(value)
