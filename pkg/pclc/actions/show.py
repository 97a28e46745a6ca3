#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Functions for showing the configuration, version, and actions.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, Any, Optional, List


def show(
        action: Optional[List[str]] = None,
        **kw: Any
    ) -> SuccessTuple:
    """Show elements of a certain type.

    Command:
        `show {option}`

    Example:
        `show config`
    """
    from pclc.utils.misc import choose_subaction
    show_options = {
        'actions': _show_actions,
        'config': _show_config,
        'packages': _show_packages,
        'version': _show_version,
    }
    return choose_subaction(action, show_options, **kw)


def _show_actions(nopretty: bool = False, **kw: Any) -> SuccessTuple:
    """Show the available actions."""
    from pclc.actions import actions
    for name in sorted(actions):
        print(name if nopretty else f"  - {name}")
    return True, "Success"


def _show_config(
        action: Optional[List[str]] = None,
        nopretty: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Show the effective configuration (or the section named by the sub-action).

    Usage:
        `show config`
        `show config train`
    """
    from pclc.config import get_config
    from pclc.utils.formatting import pprint
    keys = list(action or [])
    try:
        cf = get_config(*keys) if keys else get_config()
    except Exception as e:
        return False, f"Invalid config keys {keys}: {e}"
    if nopretty:
        import json
        print(json.dumps(cf, indent=2, sort_keys=True, default=str))
    else:
        pprint(cf)
    return True, "Success"


def _show_version(nopretty: bool = False, **kw: Any) -> SuccessTuple:
    """Show the version and the on-disk format versions."""
    from pclc._internal.arguments import parse_version
    parse_version(['--nopretty'] if nopretty else [])
    return True, "Success"


def _show_packages(
        action: Optional[List[str]] = None,
        nopretty: bool = False,
        **kw: Any
    ) -> SuccessTuple:
    """
    Show the packages of a dependency group (default `full`), one per line with `--nopretty`.

    Usage:
        `show packages required --nopretty`
    """
    from pclc.utils.packages import packages
    key = 'full' if not action else action[0]
    if key not in packages:
        return False, f"'{key}' is not a package group. Choose one of: {', '.join(packages)}"
    if nopretty:
        for install_name in packages[key].values():
            print(install_name)
    else:
        from pclc.utils.formatting import pprint
        pprint(packages[key])
    return True, "Success"
