#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
This package includes argument parsing utilities.
"""

from pclc._internal.arguments._parse_arguments import parse_arguments, parse_line, remove_leading_action
from pclc._internal.arguments._parser import parser, parse_help, parse_version

__all__ = ['parser', 'parse_arguments', 'parse_line', 'remove_leading_action', 'parse_help', 'parse_version']
