#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Network hyperparameters and the ablation variants.
"""

from __future__ import annotations
import enum
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pclc.utils.typing import Any, Dict


class Variant(str, enum.Enum):
    """
    Model assemblies compared in the ablation study.

    - `CVAE`: history encoder, Gaussian latent and an MLP decoder.
    - `TRANSFORMER`: history encoder and the Transformer decoder, no latent.
    - `CVAE_T`: the CVAE with the Transformer decoder.
    - `CIT`: `CVAE_T` plus the interaction-aware yield predictor.
    - `SEQ2SEQ`: recurrent encoder-decoder baseline.
    """
    CVAE = 'CVAE'
    TRANSFORMER = 'TRANSFORMER'
    CVAE_T = 'CVAE_T'
    CIT = 'CIT'
    SEQ2SEQ = 'SEQ2SEQ'

    @property
    def latent(self) -> bool:
        return self in (Variant.CVAE, Variant.CVAE_T, Variant.CIT)

    @property
    def interaction(self) -> bool:
        return self is Variant.CIT

    @property
    def decoder(self) -> str:
        return {
            Variant.CVAE: 'mlp',
            Variant.SEQ2SEQ: 'gru',
        }.get(self, 'transformer')


class ModelConfig(BaseModel):
    """
    Hyperparameters of the prediction network. Unset fields default to `get_config('model')`.
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    variant: Variant = Variant.CIT
    t_obs: int = Field(10, ge=1)
    t_pre: int = Field(50, ge=1)
    n_vehicles: int = Field(5, ge=2)
    n_features: int = Field(5, ge=1)
    d_h: int = Field(gt=0)
    d_z: int = Field(gt=0)
    heads: int = Field(gt=0)
    d_head: int = Field(gt=0)
    mlp_hidden: int = Field(gt=0)
    d_q: int = Field(gt=0)
    d_e: int = Field(gt=0)
    d_trans: int = Field(gt=0)
    trans_layers: int = Field(ge=1)
    trans_heads: int = Field(gt=0)
    d_pos: int = Field(gt=0)
    logvar_min: float
    logvar_max: float
    literal_aggregation: bool

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
        return apply_patch_to_config(get_config('model'), data)

    @model_validator(mode='after')
    def _consistent(self) -> 'ModelConfig':
        if self.d_trans % self.trans_heads != 0:
            raise ValueError(f"d_trans={self.d_trans} must be divisible by trans_heads={self.trans_heads}.")
        if not self.logvar_min < self.logvar_max:
            raise ValueError(f"logvar_min={self.logvar_min} must be below logvar_max={self.logvar_max}.")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode='json')
