#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Utilities for formatting output text
"""

from __future__ import annotations
from pclc.utils.typing import Optional, Any, Sequence, Dict, List

_attrs = {
    'ANSI': None,
    'UNICODE': None,
    'CHARSET': None,
}
__all__ = sorted([
    'ANSI', 'CHARSET', 'UNICODE',
    'get_console',
    'print_tuple',
    'fill_ansi',
    'pprint',
    'print_table',
])

### I encountered a bug in git bash on Windows.
### This seems to resolve it; not sure if this is the best way.
import os
if 'PYTHONIOENCODING' not in os.environ:
    os.environ['PYTHONIOENCODING'] = 'utf-8'

_colorama_init = False
def _init() -> bool:
    """Enable ANSI sequences on Windows consoles."""
    global _colorama_init
    if _colorama_init:
        return True
    from pclc.utils.packages import attempt_import
    colorama = attempt_import('colorama', warn=False)
    try:
        colorama.just_fix_windows_console()
    except Exception:
        _attrs['ANSI'], _attrs['UNICODE'], _attrs['CHARSET'] = False, False, 'ascii'
        return False
    _colorama_init = True
    return True


console = None
def get_console():
    """Get the rich console."""
    global console
    if console is not None:
        return console
    from pclc.utils.packages import attempt_import
    rich_console = attempt_import('rich.console', warn=False)
    try:
        console = rich_console.Console(highlight=False)
    except Exception:
        console = None
    return console


def fill_ansi(string: str, style: str = '') -> str:
    """
    Apply a rich style to a plain string and return it with ANSI escapes.

    Parameters
    ----------
    string: str
        The text to style.

    style: str
        Style arguments to pass to `rich.text.Text`.

    Returns
    -------
    A string with ANSI styling applied.
    """
    from pclc.utils.packages import attempt_import
    rich_text = attempt_import('rich.text', warn=False)
    _console = get_console()
    if rich_text is None or _console is None:
        return string
    _init()
    text = rich_text.Text.from_ansi(string)
    text.stylize(style)
    with _console.capture() as cap:
        _console.print(text, end='', soft_wrap=True)
    return cap.get()


def print_tuple(
        tup: tuple,
        skip_common: bool = True,
        upper_padding: int = 0,
        lower_padding: int = 0,
        file = None,
    ) -> None:
    """Print a `pclc.utils.typing.SuccessTuple`."""
    from pclc.config.static import STATIC_CONFIG
    import sys
    try:
        status = 'success' if tup[0] else 'failure'
    except TypeError:
        status = 'failure'
        tup = None, None

    omit_messages = STATIC_CONFIG['system']['success']['ignore']
    if skip_common and tup[1] in omit_messages:
        return

    from pclc.config import get_config
    status_config = get_config('formatting', status, patch=True)
    CHARSET, ANSI = __getattr__('CHARSET'), __getattr__('ANSI')
    msg = ' ' + status_config[CHARSET]['icon'] + ' ' + str(tup[1])
    lines = msg.split('\n')
    lines = [lines[0]] + [
        (('    ' + line if not line.startswith(' ') else line))
        for line in lines[1:]
    ]
    if ANSI:
        lines[0] = fill_ansi(lines[0], **status_config['ansi']['rich'])
    msg = '\n'.join(lines)
    msg = ('\n' * upper_padding) + msg + ('\n' * lower_padding)
    if file is None:
        file = sys.stdout if tup[0] else sys.stderr
    print(msg, file=file)


def pprint(*args, nopretty: bool = False, **kw) -> None:
    """Pretty print an object according to the configured ANSI setting."""
    if __getattr__('ANSI') and not nopretty:
        _console = get_console()
        if _console is not None:
            from rich.pretty import Pretty
            for arg in args:
                _console.print(Pretty(arg))
            return
    import pprint as _pprint_module
    for arg in args:
        _pprint_module.pprint(arg, **kw)


def print_table(
        rows: Sequence[Dict[str, Any]],
        title: Optional[str] = None,
        columns: Optional[List[str]] = None,
        float_format: str = '{:.4f}',
    ) -> None:
    """Render a list of flat dictionaries as a table (rich when ANSI is enabled)."""
    if not rows:
        return
    columns = columns or list(rows[0].keys())

    def _fmt(val: Any) -> str:
        if isinstance(val, float):
            return float_format.format(val)
        return str(val)

    _console = get_console() if __getattr__('ANSI') else None
    if _console is not None:
        from rich.table import Table
        table = Table(title=title)
        for col in columns:
            table.add_column(str(col))
        for row in rows:
            table.add_row(*[_fmt(row.get(col, '')) for col in columns])
        _console.print(table)
        return

    if title:
        print(title)
    print('  '.join(columns))
    for row in rows:
        print('  '.join(_fmt(row.get(col, '')) for col in columns))


def __getattr__(name: str) -> Any:
    """
    Lazily load module-level variables.
    """
    if name.startswith('__') and name.endswith('__'):
        raise AttributeError("Cannot import dunders from this module.")

    if name in _attrs:
        if _attrs[name] is not None:
            return _attrs[name]
        from pclc.config import get_config
        if name.lower() in get_config('formatting'):
            _attrs[name] = get_config('formatting', name.lower())
        elif name == 'CHARSET':
            _attrs[name] = 'unicode' if __getattr__('UNICODE') else 'ascii'
        return _attrs[name]

    try:
        return globals()[name]
    except KeyError:
        raise AttributeError(f"Could not find '{name}'")
