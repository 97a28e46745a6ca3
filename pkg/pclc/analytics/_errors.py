#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Exceptions raised by the behavioral analytics.
"""


class NoLaneChangeDetected(ValueError):
    """The lateral series holds no transition above the energy floor."""


class SignalTooShort(ValueError):
    """The series is shorter than the widest wavelet support requires."""


class GapLogError(KeyError):
    """A gap index is missing from the reconstructed gap log."""
