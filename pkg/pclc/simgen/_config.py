#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Validated scenario-generation parameters.
Unspecified fields fall back to `get_config('simgen')`.
"""

from __future__ import annotations
from pclc.utils.typing import Any, Dict
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class _Section(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)


class HeadwayConfig(_Section):
    mean_s: float = Field(gt=0)
    min_s: float = Field(gt=0)
    min_spawn_gap: float = Field(gt=0)

    @model_validator(mode='after')
    def _mean_above_min(self):
        if self.mean_s < self.min_s:
            raise ValueError(f"headway mean_s ({self.mean_s}) must be >= min_s ({self.min_s}).")
        return self


class StreamSpeedConfig(_Section):
    mean: float = Field(gt=0)
    std: float = Field(ge=0)
    min: float = Field(gt=0)


class IDMConfig(_Section):
    desired_speed: float = Field(gt=0)
    max_accel: float = Field(gt=0)
    comfortable_decel: float = Field(gt=0)
    min_gap: float = Field(gt=0)
    time_headway: float = Field(gt=0)
    delta: float = Field(gt=0)
    max_decel: float = Field(gt=0)


class NonYieldConfig(_Section):
    speed_boost: float = Field(ge=0)
    headway_factor: float = Field(gt=0, le=1)
    extra_accel: float = Field(ge=0)


class GapAcceptanceConfig(_Section):
    lead_min: float = Field(ge=0)
    lag_min: float = Field(ge=0)


class LaneChangerConfig(_Section):
    standstill_gap: float = Field(gt=0)
    merge_gap: float = Field(gt=0)


class VehicleDimsConfig(_Section):
    length_min: float = Field(gt=0)
    length_max: float = Field(gt=0)
    width_min: float = Field(gt=0)
    width_max: float = Field(gt=0)

    @model_validator(mode='after')
    def _ordered(self):
        if self.length_max < self.length_min or self.width_max < self.width_min:
            raise ValueError("Vehicle dimension ranges must satisfy min <= max.")
        return self


class ScenarioConfig(BaseModel):
    """
    Parameters of one post-crash lane-change scenario.

    ```
    >>> from pclc.simgen import ScenarioConfig
    >>> cfg = ScenarioConfig(seed=3, p_yield=0.3)
    >>> cfg.idm.desired_speed
    12.0
    ```
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    seed: int = Field(ge=0)
    dt: float = Field(gt=0)
    lane_width: float = Field(gt=0)
    crash_position: float
    lc_initial_gap: float = Field(gt=0)
    lc_initial_speed: float = Field(ge=0)
    headway: HeadwayConfig
    stream_speed: StreamSpeedConfig
    first_vehicle_offset: float = Field(ge=0)
    p_yield: float = Field(ge=0, le=1)
    idm: IDMConfig
    non_yield: NonYieldConfig
    yield_lookahead: float = Field(gt=0)
    gap_acceptance: GapAcceptanceConfig
    lane_changer: LaneChangerConfig
    lc_duration: float = Field(gt=0)
    probe_duration: float = Field(gt=0)
    probe_fraction: float = Field(gt=0, lt=1)
    heading_speed_floor: float = Field(gt=0)
    post_merge_s: float = Field(gt=0)
    max_horizon_s: float = Field(gt=0)
    max_retries: int = Field(ge=1)
    n_target_vehicles: int = Field(ge=4)
    vehicle: VehicleDimsConfig

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
        return apply_patch_to_config(get_config('simgen'), data)

    @field_validator('dt')
    @classmethod
    def _dt_fine_enough(cls, v: float) -> float:
        if v > 0.5:
            raise ValueError(f"dt must be at most 0.5 s, got {v}.")
        return v

    def with_seed(self, seed: int) -> 'ScenarioConfig':
        return self.model_copy(update={'seed': int(seed)})

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()
