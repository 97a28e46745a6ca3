#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Displacement metrics, crash-risk checks, baselines, and evaluation reports.
"""

from pclc.evaluation._metrics import ade, fde, displacement_errors, horizon_steps
from pclc.evaluation._predict import (
    sample_trajectories,
    evaluate_stochastic,
    true_future,
    constant_velocity,
    constant_velocity_samples,
    recurrent_seq2seq,
)
from pclc.evaluation._safety import (
    trajectory_boxes,
    neighbor_boxes,
    predicted_boxes,
    crash_flags,
    false_crash_rate,
    min_ttc_trajectory,
    bucket_labels,
    ttc_bucket_counts,
    ttc_deviation,
)
from pclc.evaluation._report import EvalReport, evaluate, read_report, compare_reports
from pclc.evaluation._experiment import (
    ExperimentConfig,
    AblationResult,
    summarize_runs,
    run_ablation,
)
