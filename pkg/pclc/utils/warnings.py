#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Handle all things warnings and errors here
"""

from __future__ import annotations
from pclc.utils.typing import Any, Optional

import sys
import warnings

warnings.filterwarnings(
    "always",
    category = UserWarning
)
warnings.filterwarnings(
    "ignore",
    category = DeprecationWarning
)


def _formatting_config(kind: str) -> Optional[dict]:
    try:
        from pclc.config import get_config
        return get_config('formatting', kind, patch=True)
    except Exception:
        return None


def warn(*args, stacklevel=2, stack=True, color: bool = True, **kw) -> None:
    """
    Print a stylized warning message.
    May be captured by `warnings.filterwarnings()`.
    """
    if stacklevel is None:
        stacklevel = 1
        stack = False
    _old_sw = warnings.showwarning

    CHARSET, ANSI = 'ascii', False
    warn_config = None
    if color:
        try:
            from pclc.utils.formatting import CHARSET, ANSI, fill_ansi
        except ImportError:
            pass
        warn_config = _formatting_config('warnings')

    a = list(args)
    icon = warn_config[CHARSET]['icon'] if warn_config is not None else ''
    a[0] = ' ' + icon + ' ' + str(a[0])
    if ANSI and warn_config is not None:
        a[0] = fill_ansi(a[0], **warn_config['ansi']['rich'])

    ### Optionally omit the warning location.
    def _no_stack_sw(message, category, filename, lineno, file=None, line=None):
        sys.stderr.write(str(message) + '\n')

    if not stack:
        warnings.showwarning = _no_stack_sw
    try:
        warnings.warn(*a, stacklevel=stacklevel, **kw)
    finally:
        if not stack:
            warnings.showwarning = _old_sw


def error(
        message: str,
        exception_class = Exception,
        nopretty: bool = False,
        stack: bool = False,
    ):
    """
    Raise an exception whose message carries the configured error icon.
    If `stack` is `True`, echo the styled message to the console before raising.
    """
    from pclc.utils.formatting import CHARSET, ANSI, get_console
    error_config = _formatting_config('errors')
    icon = error_config[CHARSET]['icon'] if error_config is not None else ''
    message = (' ' + icon + ' ' if icon else '') + str(message)
    exception = exception_class(message)
    if stack and ANSI and not nopretty and error_config is not None:
        console = get_console()
        if console is not None:
            console.print(message, style=error_config['ansi']['rich']['style'], markup=False)
    raise exception


def info(message: str, icon: bool = True, **kw):
    """Print an informative message."""
    from pclc.utils.formatting import CHARSET, ANSI, fill_ansi
    info_config = _formatting_config('info')
    if icon and info_config is not None:
        message = ' ' + info_config[CHARSET]['icon'] + ' ' + message
    if ANSI and info_config is not None:
        lines = message.split('\n')
        message = fill_ansi(lines[0], **info_config['ansi']['rich']) + (
            '\n' + '\n'.join(lines[1:]) if len(lines) > 1 else ''
        )
    print(message)
