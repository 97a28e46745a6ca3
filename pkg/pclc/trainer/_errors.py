#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Exceptions raised while training.
"""


class TrainingError(RuntimeError):
    """A loss term or gradient became non-finite; the message names the batch and term."""
