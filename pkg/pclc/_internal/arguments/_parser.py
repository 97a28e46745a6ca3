#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
This module creates the argparse Parser.
"""

from __future__ import annotations
import argparse
from pclc.utils.typing import Any, Dict, List, Union
from pclc.utils.misc import parse_float_list

_original_argparse_parse_known_args = argparse.ArgumentParser.parse_known_args


def _new_argparse_error(self, message):
    raise argparse.ArgumentError(None, message)


class ArgumentParser(argparse.ArgumentParser):
    """Override the built-in `argparse` error handling."""

    def parse_known_args(self, *args, exit_on_error: bool = False, **kw):
        _error_bkp = self.error
        if not exit_on_error:
            self.error = _new_argparse_error.__get__(self)
        try:
            return _original_argparse_parse_known_args(self, *args, **kw)
        finally:
            self.error = _error_bkp


def parse_help(sysargs: Union[List[str], Dict[str, Any]]) -> None:
    """Print the docstring of the requested action (or the action list)."""
    import textwrap
    from pclc.actions import actions, get_action
    args = parse_arguments_safe(sysargs)
    if not args['action']:
        parser.print_help()
        return print("\nActions:\n  " + '\n  '.join(sorted(actions)))
    action_function = get_action(args['action'])
    if action_function is None:
        return print(f"No action named '{args['action'][0]}'. Choose one of: {', '.join(sorted(actions))}")
    return print(textwrap.dedent(action_function.__doc__ or f"No help available for '{args['action'][0]}'."))


def parse_arguments_safe(sysargs):
    from pclc._internal.arguments._parse_arguments import parse_arguments
    if isinstance(sysargs, dict):
        return sysargs
    return parse_arguments(list(sysargs))


def parse_version(sysargs: List[str]) -> None:
    """Print the version and the on-disk format versions."""
    from pclc.config import __version__ as version
    from pclc.config.static import STATIC_CONFIG
    if '--nopretty' in sysargs:
        return print(version)
    formats = ', '.join(f"{k} {v}" for k, v in STATIC_CONFIG['formats'].items())
    return print(f"{STATIC_CONFIG['setup']['name']} {version} (formats: {formats})")


def get_arguments_triggers() -> Dict[str, tuple]:
    """Map each destination to its option strings."""
    return {a.dest: tuple(a.option_strings) for a in parser._actions}


parser = ArgumentParser(
    prog = 'pclc',
    description = "Synthesize, analyze, and predict post-crash lane changes.",
    usage = "pclc [action] {options}",
    add_help = False,
)

groups = {}
groups['actions'] = parser.add_argument_group(title='Actions options')
groups['paths'] = parser.add_argument_group(title='Input and output options')
groups['experiment'] = parser.add_argument_group(title='Experiment options')
groups['debug'] = parser.add_argument_group(title='Debugging options')

### Actions options
groups['actions'].add_argument(
    'action', nargs='*', help="Action to execute, e.g. `simgen` or `show config`."
)
groups['actions'].add_argument(
    '-h', '--help', action='store_true', help="Print a help message for an action."
)
groups['actions'].add_argument(
    '-V', '--version', action='store_true', help="Print the version and format versions."
)

### Input and output options
groups['paths'].add_argument(
    '-c', '--config', help="A JSON or YAML config file for the action."
)
groups['paths'].add_argument(
    '-i', '--in', dest='input', help="Input directory (scenarios for `windows` and `analyze`)."
)
groups['paths'].add_argument(
    '-o', '--out', help="Output directory or file."
)
groups['paths'].add_argument(
    '--data', help="A windows directory written by `windows`."
)
groups['paths'].add_argument(
    '--ckpt', help="A checkpoint directory written by `train`."
)
groups['paths'].add_argument(
    '--window', help="A single window as JSON (for `predict`)."
)
groups['paths'].add_argument(
    '--eval', dest='eval_dirs', nargs='+', help="Evaluation directories to compare (for `report`)."
)

### Experiment options
groups['experiment'].add_argument(
    '-n', '--n', dest='n', type=int, help="Number of scenarios to generate."
)
groups['experiment'].add_argument(
    '--seed', type=int, help="Seed for every random stream of the action."
)
groups['experiment'].add_argument(
    '--t-obs', dest='t_obs', type=int, help="History length in steps."
)
groups['experiment'].add_argument(
    '--t-pre', dest='t_pre', type=int, help="Prediction length in steps."
)
groups['experiment'].add_argument(
    '--step', dest='step_s', type=float, help="Window stride in seconds."
)
groups['experiment'].add_argument(
    '--split', type=float, help="Share of events in the training split."
)
groups['experiment'].add_argument(
    '-k', '--k', dest='k', type=int, help="Predictions per window."
)
groups['experiment'].add_argument(
    '--horizons', type=parse_float_list, help="Comma-separated horizons in seconds, e.g. `1,2,3,4,5`."
)
groups['experiment'].add_argument(
    '--variant', help="Model variant: CVAE, TRANSFORMER, CVAE_T, CIT, or SEQ2SEQ."
)
groups['experiment'].add_argument(
    '--epochs', type=int, help="Override the number of training epochs."
)
groups['experiment'].add_argument(
    '-w', '--workers', type=int, help="Worker threads (capped by PCLC_THREADS)."
)

### Debugging options
groups['debug'].add_argument(
    '--debug', action='store_true', help="Print debug statements."
)
groups['debug'].add_argument(
    '--nopretty', action='store_true', help="Print plain output without ANSI or icons."
)
