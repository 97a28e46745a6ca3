#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
This module contains functions for parsing arguments
"""

from __future__ import annotations
from pclc.utils.typing import Any, Dict, List, Optional


def parse_arguments(sysargs: List[str]) -> Dict[str, Any]:
    """
    Parse a list of arguments into keyword arguments for an action.

    Parameters
    ----------
    sysargs: List[str]
        Command-line arguments without the executable, e.g. `['simgen', '--n', '5']`.

    Returns
    -------
    A dictionary of keyword arguments. `False` flags and unset options are dropped.

    Raises
    ------
    `ValueError` on malformed or unknown options.
    """
    import argparse
    from pclc._internal.arguments._parser import parser
    try:
        args, unknown = parser.parse_known_args(sysargs, exit_on_error=False)
    except argparse.ArgumentError as e:
        from pclc.utils.warnings import error
        error(f"Invalid arguments: {e}", ValueError)
    if unknown:
        from pclc.utils.warnings import error
        error(f"Unrecognized arguments: {' '.join(unknown)}", ValueError)
    args_dict = {
        k: v for k, v in vars(args).items()
        if v is not None and v is not False
    }
    args_dict['sysargs'] = list(sysargs)
    return parse_synonyms(args_dict)


def parse_line(line: str) -> Dict[str, Any]:
    """
    Parse a line of text into keyword arguments.

    Examples
    --------
    >>> parse_line('show config --debug')['action']
    ['show', 'config']
    """
    import shlex
    return parse_arguments(shlex.split(line))


def parse_synonyms(args_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Resolve action aliases (e.g. `eval` -> `evaluate`)."""
    from pclc.config.static import STATIC_CONFIG
    aliases = STATIC_CONFIG['system']['action_aliases']
    action = list(args_dict.get('action', []))
    if action and action[0] in aliases:
        action[0] = aliases[action[0]]
    args_dict['action'] = action
    return args_dict


def remove_leading_action(action: List[str], _actions: Optional[Dict[str, Any]] = None) -> List[str]:
    """Drop the action name, keeping its sub-actions (`['show', 'config']` -> `['config']`)."""
    return list(action[1:])
