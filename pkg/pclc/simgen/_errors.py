#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Exceptions raised by the scenario generator.
"""


class GenerationError(RuntimeError):
    """No valid scenario could be produced within the retry budget."""
