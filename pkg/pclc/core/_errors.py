#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Exceptions for the trajectory data model.
"""


class GridError(IndexError):
    """A time value does not lie on the scene's time grid."""


class SceneFormatError(ValueError):
    """A scene file or array does not follow the expected layout."""
