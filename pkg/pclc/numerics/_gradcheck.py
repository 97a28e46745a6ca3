#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Compare reverse-mode gradients against central finite differences.
"""

from __future__ import annotations
import math
import numpy as np
from pclc.utils.typing import Callable, List, Sequence, Union
from pclc.numerics._tensor import Tensor
from pclc.numerics._tape import Tape, no_grad
from pclc.numerics._backward import backward
from pclc.numerics._errors import NumericalError, TapeError


def gradcheck(
        function: Callable[..., Tensor],
        inputs: Union[Tensor, Sequence[Tensor]],
        h: float = 1e-4,
        debug: bool = False,
    ) -> float:
    """
    Return the largest relative error between autodiff and finite-difference gradients.

    The error for one coordinate is `|g_ad - g_fd| / max(1e-8, |g_ad| + |g_fd|)`.
    The inputs are perturbed in place and restored afterwards, so module
    parameters may be passed as inputs while `function` reads them directly.

    Parameters
    ----------
    function: Callable[..., Tensor]
        Called as `function(*inputs)`; must return a single-element tensor.

    inputs: Union[Tensor, Sequence[Tensor]]
        The tensors to differentiate against.

    h: float, default 1e-4
        The finite-difference step.

    Returns
    -------
    The maximum relative error, or `inf` if any value or gradient is non-finite.
    """
    if isinstance(inputs, Tensor):
        inputs = [inputs]
    inputs: List[Tensor] = list(inputs)
    saved = [(t.requires_grad, t.grad) for t in inputs]

    def _evaluate() -> float:
        with no_grad():
            return float(function(*inputs).values.reshape(-1)[0])

    try:
        for t in inputs:
            t.requires_grad = True
            t.grad = None
        with Tape() as tape:
            out = function(*inputs)
        if len(tape) == 0:
            ad = [np.zeros(t.shape) for t in inputs]
        else:
            backward(out, tape)
            ad = [t.grad.copy() if t.grad is not None else np.zeros(t.shape) for t in inputs]

        worst = 0.0
        for t, g_ad in zip(inputs, ad):
            flat = t.values.reshape(-1)
            g_flat = g_ad.reshape(-1)
            for i in range(flat.size):
                original = flat[i]
                flat[i] = original + h
                f_plus = _evaluate()
                flat[i] = original - h
                f_minus = _evaluate()
                flat[i] = original
                g_fd = (f_plus - f_minus) / (2.0 * h)
                if not (math.isfinite(g_fd) and math.isfinite(g_flat[i])):
                    return math.inf
                err = abs(g_flat[i] - g_fd) / max(1e-8, abs(g_flat[i]) + abs(g_fd))
                worst = max(worst, err)
        if debug:
            from pclc.utils.debug import dprint
            dprint(f"gradcheck over {sum(t.size for t in inputs)} coordinates: {worst:.3e}")
        return worst
    except (NumericalError, FloatingPointError, TapeError):
        return math.inf
    finally:
        for t, (requires_grad, grad) in zip(inputs, saved):
            t.requires_grad = requires_grad
            t.grad = grad
