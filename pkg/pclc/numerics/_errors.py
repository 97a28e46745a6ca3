#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Exceptions raised by tensor operations and the tape.
"""


class ShapeError(ValueError):
    """Operand shapes do not conform for an operation."""


class NumericalError(ArithmeticError):
    """An operation produced NaN or infinite values."""


class TapeError(RuntimeError):
    """The tape was used incorrectly (e.g. backward on a consumed tape)."""
