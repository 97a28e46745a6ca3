#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Reverse traversal of a tape.
"""

from __future__ import annotations
import numpy as np
from pclc.utils.typing import Dict, Optional
from pclc.utils.warnings import error
from pclc.numerics._errors import ShapeError, NumericalError, TapeError
from pclc.numerics._tensor import Tensor


def backward(loss: Tensor, tape: Optional['pclc.numerics.Tape'] = None, debug: bool = False) -> None:
    """
    Populate `.grad` on every leaf that contributed to `loss`.

    Leaf gradients accumulate (`+=`) so several losses may be summed across calls
    on different tapes. Leaves recorded on the tape but not reached from `loss`
    receive a zero gradient. The tape is consumed afterwards.

    Parameters
    ----------
    loss: Tensor
        A single-element tensor recorded on `tape`.

    tape: Optional[Tape], default None
        The tape to traverse. Defaults to the tape `loss` was recorded on.
    """
    if loss.size != 1:
        error(f"backward() needs a scalar loss, not shape {loss.shape}.", ShapeError)
    tape = tape if tape is not None else loss._tape
    if tape is None:
        error("The loss was not recorded on a tape (no input requires a gradient).", TapeError)
    if tape.consumed:
        error("backward() called on a consumed tape.", TapeError)
    if len(tape) == 0:
        error("backward() called on an empty tape.", TapeError)

    grads: Dict[int, np.ndarray] = {id(loss): np.ones(loss.shape)}
    loss.grad = np.ones(loss.shape)
    leaves: Dict[int, Tensor] = {}
    visited = 0
    for node in reversed(tape.nodes):
        g = grads.pop(id(node.output), None)
        if g is None:
            for inp in node.inputs:
                if inp.requires_grad and inp._tape is not tape:
                    leaves.setdefault(id(inp), inp)
            continue
        visited += 1
        input_grads = node.backward_fn(g)
        for inp, ig in zip(node.inputs, input_grads):
            if ig is None or not inp.requires_grad:
                continue
            if ig.shape != inp.shape:
                ig = np.reshape(ig, inp.shape)
            if inp._tape is tape and inp._node is not None:
                if id(inp) in grads:
                    grads[id(inp)] = grads[id(inp)] + ig
                else:
                    grads[id(inp)] = np.array(ig, dtype=np.float64)
                continue
            leaves.setdefault(id(inp), inp)
            if not np.all(np.isfinite(ig)):
                label = f"'{inp.name}'" if inp.name else f"of shape {inp.shape}"
                error(
                    f"Non-finite gradient for leaf {label} from op '{node.op}'.",
                    NumericalError,
                )
            inp.grad = ig.copy() if inp.grad is None else inp.grad + ig

    for leaf in leaves.values():
        if leaf.grad is None:
            leaf.grad = np.zeros(leaf.shape)

    tape.consumed = True
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"backward: {visited} of {len(tape)} nodes reached, {len(leaves)} leaves.")
