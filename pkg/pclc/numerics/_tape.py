#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Record primitive operations for reverse-mode differentiation.

A `Tape` is activated as a context manager. While active, every primitive op
whose inputs require gradients appends a node to it:

```
>>> from pclc.numerics import Tape, Tensor, backward
>>> x = Tensor([1.0, 2.0], requires_grad=True)
>>> with Tape():
...     loss = (x * x).sum()
>>> backward(loss)
>>> x.grad
array([2., 4.])
```

Tapes are thread-local: each thread sees only the tape it entered.
"""

from __future__ import annotations
import threading
from dataclasses import dataclass
from pclc.utils.typing import Callable, List, Optional, Tuple

_state = threading.local()


def _stack() -> list:
    if not hasattr(_state, 'stack'):
        _state.stack = []
    return _state.stack


def get_active_tape() -> Optional['Tape']:
    """Return the innermost active tape in this thread (`None` inside `no_grad()`)."""
    stack = _stack()
    return stack[-1] if stack else None


@dataclass
class Node:
    """One recorded primitive: its output, inputs and local derivative."""
    op: str
    output: 'pclc.numerics.Tensor'
    inputs: Tuple['pclc.numerics.Tensor', ...]
    backward_fn: Callable


class Tape:
    """
    Ordered record of primitive operations.
    Nodes are stored in execution order, which is also a topological order.
    """

    def __init__(self):
        self.nodes: List[Node] = []
        self.consumed: bool = False

    def record(self, op: str, output, inputs, backward_fn: Callable) -> Node:
        """Append a node and attach it to `output`."""
        if self.consumed:
            from pclc.numerics._errors import TapeError
            from pclc.utils.warnings import error
            error(f"Cannot record '{op}' on a consumed tape.", TapeError)
        node = Node(op, output, tuple(inputs), backward_fn)
        self.nodes.append(node)
        output._node = node
        output._tape = self
        return node

    def __len__(self) -> int:
        return len(self.nodes)

    def __enter__(self) -> 'Tape':
        _stack().append(self)
        return self

    def __exit__(self, *exc):
        _stack().pop()
        return False

    def __repr__(self) -> str:
        return f"Tape(nodes={len(self.nodes)}, consumed={self.consumed})"


class no_grad:
    """Suspend recording inside the block (used for inference and finite differences)."""

    def __enter__(self):
        _stack().append(None)
        return self

    def __exit__(self, *exc):
        _stack().pop()
        return False
