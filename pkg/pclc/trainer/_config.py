#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Validated training configuration.
"""

from __future__ import annotations
import pathlib
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pclc.utils.typing import Any, Dict, Optional, PathLike
from pclc.model import LossWeights, Variant


def default_weights(variant: Variant) -> LossWeights:
    """`(1, 0.5, 1)` with the terms a variant cannot produce set to zero."""
    variant = Variant(variant)
    return LossWeights(
        w1 = 1.0,
        w2 = 0.5 if variant.latent else 0.0,
        w3 = 1.0 if variant.interaction else 0.0,
    )


class TrainConfig(BaseModel):
    """
    Everything that determines a training run. Unset fields default to `get_config('train')`.

    `weights` defaults per variant (see `default_weights`). Explicit weights must not
    enable a term the variant lacks (the KL term without a latent, the interaction
    term without the interaction module).
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    variant: Variant
    epochs: int = Field(gt=0)
    batch_size: int = Field(gt=0)
    learning_rate: float = Field(gt=0.0)
    beta1: float = Field(ge=0.0, lt=1.0)
    beta2: float = Field(ge=0.0, lt=1.0)
    adam_eps: float = Field(gt=0.0)
    weights: Optional[LossWeights] = None
    clip_norm: float = Field(gt=0.0)
    seed: int = Field(ge=0)
    t_obs: int = Field(gt=0)
    t_pre: int = Field(gt=0)
    val_fraction: float = Field(ge=0.0, lt=1.0)
    verbose: bool = False
    model: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode='before')
    @classmethod
    def _fill_defaults(cls, data: Any) -> Any:
        from pclc.config import get_config
        from pclc.config._patch import apply_patch_to_config
        if isinstance(data, BaseModel):
            data = data.model_dump()
        if data is None:
            data = {}
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if isinstance(data.get('variant'), str):
            data['variant'] = data['variant'].upper()
        if isinstance(data.get('weights'), (list, tuple)):
            data['weights'] = LossWeights.from_value(data['weights'])
        data = apply_patch_to_config(get_config('train'), data)
        if data.get('weights') is None:
            variant = data.get('variant')
            variant = variant if isinstance(variant, Variant) else Variant(str(variant).upper())
            data['weights'] = default_weights(variant)
        return data

    @model_validator(mode='after')
    def _consistent_weights(self) -> 'TrainConfig':
        if not self.variant.latent and self.weights.w2 != 0:
            raise ValueError(f"Variant {self.variant.value} has no latent; w2 must be 0, got {self.weights.w2}.")
        if not self.variant.interaction and self.weights.w3 != 0:
            raise ValueError(
                f"Variant {self.variant.value} has no interaction module; w3 must be 0, got {self.weights.w3}."
            )
        return self

    def model_settings(self) -> Dict[str, Any]:
        """Keyword arguments for `ModelConfig`."""
        return {**self.model, 'variant': self.variant, 't_obs': self.t_obs, 't_pre': self.t_pre}

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode='json')


def read_train_config(path: Optional[PathLike] = None, **overrides) -> TrainConfig:
    """
    Build a `TrainConfig` from a JSON or YAML file patched with `overrides`.
    """
    data: Dict[str, Any] = {}
    if path is not None:
        from pclc.config._read_config import read_config_file
        data = read_config_file(pathlib.Path(path))
    data.update({k: v for k, v in overrides.items() if v is not None})
    return TrainConfig(**data)
