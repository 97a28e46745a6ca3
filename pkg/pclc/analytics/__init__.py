#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Behavioral analytics of post-crash lane changes: maneuver boundaries, 2-D TTC,
gap logs, yield labels and batch summaries.
"""

from pclc.analytics._errors import NoLaneChangeDetected, SignalTooShort, GapLogError
from pclc.analytics._geometry import OrientedBox, boxes_overlap, overlap_batch
from pclc.analytics._ttc import (
    TTCQuery,
    ttc_2d,
    ttc_batch,
    min_ttc_event,
    ttc_bucket_shares,
)
from pclc.analytics._wavelet import mexican_hat, mexican_hat_cwt, wavelet_energy, wavelet_scales
from pclc.analytics._boundaries import LCBoundary, detect_lc_boundaries, detect_scene_boundaries
from pclc.analytics._gaps import (
    GapEvent,
    gap_events,
    final_gap_index,
    label_yielding,
    count_rejected_gaps,
)
from pclc.analytics._yielding import identify_yielding_kinematic
from pclc.analytics._summary import (
    BehaviorSummary,
    BehaviorReport,
    summarize,
    summarize_event,
    aggregate_summaries,
    rejected_gap_buckets,
)
