#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Exceptions raised by the prediction network and its checkpoints.
"""


class CheckpointError(ValueError):
    """A checkpoint is missing, malformed, or does not match the network."""
