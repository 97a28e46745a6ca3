#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Parameter containers for networks built on `pclc.numerics`.
"""

from __future__ import annotations
import math
from collections import OrderedDict
import numpy as np
from pclc.numerics import Tensor
from pclc.utils.typing import Dict, Iterator, List, Optional, Tuple


class Module:
    """
    A named tree of parameters.

    Subclasses register parameters with `add_param()` and child modules with
    `add_module()`. Parameter names are dotted paths, e.g. `encoder.gru.W_z`.
    """

    def __init__(self):
        self._params: Dict[str, Tensor] = OrderedDict()
        self._modules: Dict[str, 'Module'] = OrderedDict()

    def add_param(self, name: str, values: np.ndarray) -> Tensor:
        param = Tensor(values, requires_grad=True, name=name)
        self._params[name] = param
        setattr(self, name, param)
        return param

    def add_module(self, name: str, module: 'Module') -> 'Module':
        self._modules[name] = module
        setattr(self, name, module)
        return module

    def named_parameters(self, prefix: str = '') -> Iterator[Tuple[str, Tensor]]:
        for name, param in self._params.items():
            yield prefix + name, param
        for name, module in self._modules.items():
            yield from module.named_parameters(prefix + name + '.')

    def parameters(self) -> List[Tensor]:
        return [p for _, p in self.named_parameters()]

    def num_parameters(self) -> int:
        return int(sum(p.size for p in self.parameters()))

    def zero_grad(self) -> None:
        for p in self.parameters():
            p.zero_grad()

    def state_dict(self) -> Dict[str, np.ndarray]:
        """Copies of every parameter array, keyed by dotted name."""
        return OrderedDict((name, p.values.copy()) for name, p in self.named_parameters())

    def load_state_dict(self, state: Dict[str, np.ndarray], strict: bool = True) -> None:
        """
        Overwrite parameters in place.

        Raises
        ------
        `CheckpointError` on missing or unexpected names (when `strict`) or shape mismatches.
        """
        from pclc.utils.warnings import error
        from pclc.model._errors import CheckpointError
        params = dict(self.named_parameters())
        if strict:
            missing = sorted(set(params) - set(state))
            unexpected = sorted(set(state) - set(params))
            if missing or unexpected:
                error(f"Parameter names differ: missing {missing}, unexpected {unexpected}.", CheckpointError)
        for name, values in state.items():
            if name not in params:
                continue
            values = np.asarray(values, dtype=np.float64)
            if values.shape != params[name].shape:
                error(
                    f"Parameter '{name}' has shape {values.shape}, expected {params[name].shape}.",
                    CheckpointError,
                )
            params[name].values[...] = values

    def __repr__(self) -> str:
        return f"{type(self).__name__}(parameters={self.num_parameters()})"


def glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    """Uniform Glorot initialization."""
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, (fan_in, fan_out))


def as_rng(rng: Optional[np.random.Generator] = None, seed: int = 0) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng(seed)
