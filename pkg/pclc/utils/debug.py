#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Functions to handle debug statements
"""

from __future__ import annotations
from pclc.utils.typing import Optional


def dprint(
        msg: str,
        leader: bool = True,
        package: bool = True,
        nopretty: bool = False,
        _progress: Optional['rich.progress.Progress'] = None,
        **kw
    ) -> None:
    """Print a debug message prefixed with the calling module and line."""
    import inspect
    try:
        from pclc.utils.formatting import CHARSET, ANSI, fill_ansi
        from pclc.config import get_config
        cf = get_config('formatting', 'debug', patch=True)
    except Exception:
        CHARSET, ANSI, fill_ansi, cf = 'ascii', False, None, None

    parent_frame = inspect.stack()[1][0]
    parent_info = inspect.getframeinfo(parent_frame)
    premsg = ''
    if package:
        premsg = parent_frame.f_globals.get('__name__', '') + ':' + str(parent_info.lineno) + '\n'
    if leader and cf is not None:
        premsg = ' ' + cf[CHARSET]['icon'] + ' ' + premsg

    if ANSI and not nopretty and cf is not None and fill_ansi is not None:
        premsg = fill_ansi(premsg, **cf['ansi']['rich'])

    _print = _progress.console.log if _progress is not None else print
    _print(premsg + str(msg))
