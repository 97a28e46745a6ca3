#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Simulate post-crash lane changes.

The lane changer (LC) approaches a crashed vehicle and stops behind it. A stream
of target-lane vehicles passes. Each follower is drawn yielding with probability
`p_yield`. A non-yielding follower that comes near the LC drives more aggressively
until it has passed. A yielding follower treats the LC's rear as a leader and
stops. The LC starts a small lateral probe when the first gap becomes available
and merges into the first available gap whose follower yields and whose lead and
lag gaps are large enough.
"""

from __future__ import annotations
import math
import numpy as np
from pclc.utils.typing import Any, Dict, List, Optional, Tuple
from pclc.simgen._config import ScenarioConfig
from pclc.simgen._idm import idm_acceleration, ballistic_step, smoothstep
from pclc.simgen._truth import ScenarioTruth, GeneratedScenario


class _Rejected(Exception):
    """The sampled scenario is invalid; the caller retries with another stream."""


def _draw(cfg: ScenarioConfig, rng: np.random.Generator) -> Dict[str, Any]:
    n = cfg.n_target_vehicles
    dims = cfg.vehicle
    lengths = rng.uniform(dims.length_min, dims.length_max, n + 2)
    widths = rng.uniform(dims.width_min, dims.width_max, n + 2)
    speeds = np.maximum(rng.normal(cfg.stream_speed.mean, cfg.stream_speed.std, n), cfg.stream_speed.min)
    headways = cfg.headway.min_s + rng.exponential(cfg.headway.mean_s - cfg.headway.min_s, n)
    yields = rng.random(n) < cfg.p_yield
    ### The first vehicle has no gap ahead of it to offer.
    yields[0] = False
    return {
        'lengths': lengths,
        'widths': widths,
        'speeds': speeds,
        'headways': headways,
        'yields': yields,
    }


def _simulate(cfg: ScenarioConfig, draw: Dict[str, Any]) -> Dict[str, Any]:
    """Run the scenario; return per-step histories and the phase times."""
    from pclc.analytics._gaps import gap_available, gap_margins
    dt, W, n = cfg.dt, cfg.lane_width, cfg.n_target_vehicles
    idm, ny, acc_cf = cfg.idm, cfg.non_yield, cfg.gap_acceptance
    lead_margin, lag_margin = gap_margins()

    lengths, widths = draw['lengths'], draw['widths']
    lc_len, cv_len = lengths[0], lengths[1]
    s_len = lengths[2:]
    yields = draw['yields']
    lateral_clear = (widths[0] + widths[1]) / 2.0

    crash_x = cfg.crash_position
    crash_rear = crash_x - cv_len / 2.0
    lc_x = crash_rear - cfg.lc_initial_gap - lc_len / 2.0
    lc_v = cfg.lc_initial_speed

    x = np.empty(n)
    x[0] = lc_x - lc_len / 2.0 - cfg.first_vehicle_offset - s_len[0] / 2.0
    for k in range(1, n):
        net = max(draw['headways'][k] * draw['speeds'][k], cfg.headway.min_spawn_gap)
        x[k] = x[k - 1] - s_len[k - 1] / 2.0 - net - s_len[k] / 2.0
    v = draw['speeds'].copy()

    probe_steps = int(round(cfg.probe_duration / dt))
    lc_steps = int(round(cfg.lc_duration / dt))
    post_steps = int(round(cfg.post_merge_s / dt))
    max_steps = int(round(cfg.max_horizon_s / dt))
    y_probe = cfg.probe_fraction * W
    base = dict(
        comfortable_decel = idm.comfortable_decel,
        delta = idm.delta,
    )

    hist = {'x': [], 'v': [], 'a': [], 'lc_x': [], 'lc_y': [], 'lc_v': [], 'lc_a': []}
    probe_start = merge_start = final = None
    k = 0
    while True:
        lc_front, lc_rear = lc_x + lc_len / 2.0, lc_x - lc_len / 2.0
        front, rear = x + s_len / 2.0, x - s_len / 2.0
        available = gap_available(rear[:-1], front[1:], lc_front, lc_rear, lead_margin, lag_margin)

        if probe_start is None and available.any():
            probe_start = k
        if merge_start is None and probe_start is not None and k >= probe_start + probe_steps:
            acceptable = (
                available
                & yields[1:]
                & (rear[:-1] - lc_front >= acc_cf.lead_min)
                & (lc_rear - front[1:] >= acc_cf.lag_min)
            )
            if acceptable.any():
                merge_start, final = k, int(np.flatnonzero(acceptable)[0])
                if final + 2 >= n:
                    raise _Rejected(f"merge into gap {final} leaves no follower-after-NF.")

        if merge_start is not None:
            lc_y = y_probe + (W - y_probe) * smoothstep((k - merge_start) / lc_steps)
        elif probe_start is not None:
            lc_y = y_probe * smoothstep((k - probe_start) / probe_steps)
        else:
            lc_y = 0.0

        ### Target-lane stream.
        gap = np.empty(n)
        gap[0] = math.inf
        gap[1:] = rear[:-1] - front[1:]
        v_lead = np.empty(n)
        v_lead[0] = v[0]
        v_lead[1:] = v[:-1]
        near = lc_rear - front <= cfg.yield_lookahead
        pushing = ~yields & near & ~(rear > lc_front)
        v0 = np.where(pushing, idm.desired_speed + ny.speed_boost, idm.desired_speed)
        headway = np.where(pushing, idm.time_headway * ny.headway_factor, idm.time_headway)
        a_max = np.where(pushing, idm.max_accel + ny.extra_accel, idm.max_accel)
        acc = idm_acceleration(
            v, v_lead, gap, v0, a_max,
            min_gap = idm.min_gap, time_headway = headway, **base
        )
        yielding = yields & near & (front < lc_rear)
        if yielding.any():
            acc_lc = idm_acceleration(
                v, lc_v, lc_rear - front, v0, a_max,
                min_gap = idm.min_gap, time_headway = headway, **base
            )
            acc = np.where(yielding, np.minimum(acc, acc_lc), acc)
        acc = np.clip(acc, -idm.max_decel, a_max)

        ### Lane changer.
        candidates = []
        if abs(lc_y) < lateral_clear:
            candidates.append(float(idm_acceleration(
                lc_v, 0.0, crash_rear - lc_front, idm.desired_speed, idm.max_accel,
                min_gap = cfg.lane_changer.merge_gap if merge_start is not None else cfg.lane_changer.standstill_gap,
                time_headway = idm.time_headway, **base
            )))
        if merge_start is not None:
            candidates.append(float(idm_acceleration(
                lc_v, v[final], rear[final] - lc_front, idm.desired_speed, idm.max_accel,
                min_gap = idm.min_gap, time_headway = idm.time_headway, **base
            )))
        if not candidates:
            candidates.append(float(idm_acceleration(
                lc_v, lc_v, math.inf, idm.desired_speed, idm.max_accel,
                min_gap = idm.min_gap, time_headway = idm.time_headway, **base
            )))
        lc_acc = min(max(min(candidates), -idm.max_decel), idm.max_accel)

        x_next, v_next, a_eff = ballistic_step(x, v, acc, dt)
        lc_x_next, lc_v_next, lc_a_eff = ballistic_step(
            np.array(lc_x), np.array(lc_v), np.array(lc_acc), dt,
        )
        hist['x'].append(x)
        hist['v'].append(v)
        hist['a'].append(a_eff)
        hist['lc_x'].append(lc_x)
        hist['lc_y'].append(lc_y)
        hist['lc_v'].append(lc_v)
        hist['lc_a'].append(float(lc_a_eff))

        if merge_start is not None and k >= merge_start + lc_steps + post_steps:
            break
        if k >= max_steps:
            raise _Rejected(f"no merge within {cfg.max_horizon_s} s.")
        if merge_start is None and probe_start is not None and np.all(rear > lc_front):
            raise _Rejected("every target-lane vehicle passed without yielding.")
        x, v = x_next, v_next
        lc_x, lc_v = float(lc_x_next), float(lc_v_next)
        k += 1

    return {
        'x': np.stack(hist['x']),
        'v': np.stack(hist['v']),
        'a': np.stack(hist['a']),
        'lc_x': np.asarray(hist['lc_x']),
        'lc_y': np.asarray(hist['lc_y']),
        'lc_v': np.asarray(hist['lc_v']),
        'lc_a': np.asarray(hist['lc_a']),
        'crash_x': crash_x,
        'probe_start': probe_start,
        'merge_start': merge_start,
        'final': final,
        'lc_steps': lc_steps,
    }


def _assemble(
        cfg: ScenarioConfig,
        draw: Dict[str, Any],
        sim: Dict[str, Any],
        attempt: int,
    ) -> GeneratedScenario:
    """Select the stored vehicles, derive steering, check footprints, build the truth."""
    from pclc.core import Scene, heading_from_velocity, steer_from_heading, velocity_components
    from pclc.core._roles import N_ROLES
    from pclc.analytics._gaps import availability_log, crossing_step, GapEvent
    from pclc.analytics._geometry import overlap_batch

    dt, W = cfg.dt, cfg.lane_width
    final = sim['final']
    L, n = sim['x'].shape
    lengths, widths = draw['lengths'], draw['widths']

    ### Stream vehicle -> scene column: roles first, then the vehicles that passed before the final gap.
    stream_order = [final, final + 1, final + 2] + list(range(final))
    scene_index = {s: N_ROLES - 3 + i if i < 3 else N_ROLES + (i - 3) for i, s in enumerate(stream_order)}
    V = N_ROLES + final

    x = np.empty((L, V))
    y = np.empty((L, V))
    v = np.empty((L, V))
    a = np.empty((L, V))
    length = np.empty(V)
    width = np.empty(V)
    x[:, 0], y[:, 0], v[:, 0], a[:, 0] = sim['lc_x'], sim['lc_y'], sim['lc_v'], sim['lc_a']
    length[0], width[0] = lengths[0], widths[0]
    x[:, 1], y[:, 1], v[:, 1], a[:, 1] = sim['crash_x'], 0.0, 0.0, 0.0
    length[1], width[1] = lengths[1], widths[1]
    for s, col in scene_index.items():
        x[:, col], y[:, col] = sim['x'][:, s], W
        v[:, col], a[:, col] = sim['v'][:, s], sim['a'][:, s]
        length[col], width[col] = lengths[2 + s], widths[2 + s]

    vx, vy = velocity_components(x, y, dt)
    heading = heading_from_velocity(vx, vy, cfg.heading_speed_floor)
    steer = steer_from_heading(heading)
    steer[:, 1] = 0.0

    states = np.stack([
        x, y, v, a, steer,
        np.broadcast_to(length, (L, V)),
        np.broadcast_to(width, (L, V)),
    ], axis=-1)

    boxes = np.stack([x, y, heading, np.broadcast_to(length, (L, V)), np.broadcast_to(width, (L, V))], axis=-1)
    iu, ju = np.triu_indices(V, 1)
    hits = overlap_batch(boxes[:, iu, :], boxes[:, ju, :])
    if hits.any():
        step, pair = np.argwhere(hits)[0]
        raise _Rejected(f"footprints of vehicles {iu[pair]} and {ju[pair]} overlap at step {step}.")
    stream_gaps = (sim['x'][:, :-1] - lengths[2:-1] / 2.0) - (sim['x'][:, 1:] + lengths[3:] / 2.0)
    if np.any(stream_gaps <= 0.0):
        raise _Rejected("target-lane vehicles collided.")

    cross = crossing_step(sim['lc_y'], 0.0, W)
    spans = availability_log(
        sim['x'],
        np.broadcast_to(lengths[2:], (L, n)),
        sim['lc_x'],
        np.full(L, lengths[0]),
        list(range(n)),
        cross if cross is not None else L - 1,
    )
    gaps = []
    final_event = None
    for i, (lead, lag, first, closed) in enumerate(spans):
        if lead not in scene_index or lag not in scene_index:
            raise _Rejected(f"gap ({lead}, {lag}) opened outside the stored vehicles.")
        gaps.append(GapEvent(
            index = i,
            lead = scene_index[lead],
            lag = scene_index[lag],
            t_available = first * dt,
            t_closed = closed * dt if closed is not None else None,
        ))
        if lead == final:
            final_event = i
    if final_event is None:
        raise _Rejected("the merge gap is missing from the gap log.")

    labels = np.ones(L, dtype=np.int64)
    if final_event != 0:
        labels[:spans[final_event][2]] = 0

    scene = Scene(
        states,
        dt = dt,
        lane_width = W,
        lane_centers = (0.0, W),
        event_id = f"scene-{cfg.seed:06d}",
        meta = {'seed': cfg.seed, 'attempt': attempt, 'p_yield': cfg.p_yield},
    )
    truth = ScenarioTruth(
        lc_start = sim['probe_start'] * dt,
        lc_end = (sim['merge_start'] + sim['lc_steps']) * dt,
        final_gap_index = final_event,
        rejected_gaps = len(gaps) - 1,
        labels = labels,
        gaps = gaps,
        yield_flags = {col: bool(draw['yields'][s]) for s, col in scene_index.items()},
        seed = cfg.seed,
        attempt = attempt,
    )
    return GeneratedScenario(scene=scene, truth=truth, config=cfg)


def generate_scenario(
        config: Optional[ScenarioConfig] = None,
        debug: bool = False,
        **kw
    ) -> GeneratedScenario:
    """
    Generate one post-crash lane-change scenario.

    Parameters
    ----------
    config: Optional[ScenarioConfig], default None
        The scenario parameters. Keyword arguments override its fields.

    Returns
    -------
    A `GeneratedScenario`. The same config always produces a bitwise-identical scene.

    Raises
    ------
    `GenerationError` if no valid scenario is found within `max_retries` retries.
    Retries draw from `SeedSequence([seed, attempt])`.
    """
    from pclc.utils.warnings import warn, error
    from pclc.simgen._errors import GenerationError
    if config is None or kw:
        config = ScenarioConfig(**{**(config.model_dump() if config is not None else {}), **kw})

    reasons = []
    for attempt in range(config.max_retries + 1):
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, attempt]))
        draw = _draw(config, rng)
        try:
            sim = _simulate(config, draw)
            scenario = _assemble(config, draw, sim, attempt)
        except _Rejected as e:
            reasons.append(str(e))
            if debug:
                from pclc.utils.debug import dprint
                dprint(f"Seed {config.seed}, attempt {attempt} rejected: {e}")
            continue
        if attempt > 0:
            warn(
                f"Scenario seed {config.seed} needed {attempt} retries "
                + f"(first rejection: {reasons[0]})",
                stack = False,
            )
        if debug:
            from pclc.utils.debug import dprint
            dprint(f"Generated {scenario}.")
        return scenario

    error(
        f"Could not generate a valid scenario for seed {config.seed} "
        + f"after {config.max_retries} retries:\n  - " + '\n  - '.join(reasons),
        GenerationError,
    )


def generate_dataset(
        config: Optional[ScenarioConfig] = None,
        n: int = 1,
        workers: Optional[int] = None,
        debug: bool = False,
    ) -> List[GeneratedScenario]:
    """
    Generate `n` independent scenarios with seeds `seed, seed + 1, ...`.
    Scenarios are generated on a thread pool capped by `PCLC_THREADS`.
    """
    from pclc.utils.pool import parallel_map
    from pclc.utils.warnings import error
    if n < 1:
        error(f"Dataset size must be at least 1, got {n}.", ValueError)
    if config is None:
        config = ScenarioConfig()
    configs = [config.with_seed(config.seed + i) for i in range(n)]
    return parallel_map(lambda cfg: generate_scenario(cfg, debug=debug), configs, workers=workers)
