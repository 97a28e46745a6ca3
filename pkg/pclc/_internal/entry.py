#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The entry point for launching pclc actions.
"""

from __future__ import annotations
from pclc.utils.typing import SuccessTuple, List, Optional, Dict, Callable, Any, Union


def entry(sysargs: Union[List[str], str, None] = None) -> SuccessTuple:
    """Parse arguments and launch an action.
    The `action` list removes the first element.

    Examples of action:
        'show config' -> ['config']
        'simgen' -> []

    Returns
    -------
    A `SuccessTuple` indicating success.
    """
    from pclc._internal.arguments import parse_arguments
    if sysargs is None:
        sysargs = []
    if not isinstance(sysargs, list):
        import shlex
        sysargs = shlex.split(sysargs)
    try:
        args = parse_arguments(sysargs)
    except Exception as e:
        return False, str(e)
    return entry_with_args(**args)


def entry_with_args(
        _actions: Optional[Dict[str, Callable[[Any], SuccessTuple]]] = None,
        **kw
    ) -> SuccessTuple:
    """Execute an action with keyword arguments.
    Use `entry()` for parsing sysargs before executing.
    """
    from pclc.actions import get_action, actions
    from pclc._internal.arguments import remove_leading_action
    if not kw.get('action'):
        return False, f"No action given. Choose one of: {', '.join(sorted(_actions or actions))}"

    action_function = get_action(kw['action'], _actions=_actions)
    if action_function is None:
        return False, f"Unknown action '{kw['action'][0]}'. Choose one of: {', '.join(sorted(_actions or actions))}"

    kw['action'] = remove_leading_action(kw['action'], _actions=_actions)
    try:
        result = action_function(**kw)
    except Exception as e:
        if kw.get('debug', False):
            import traceback
            traceback.print_exception(type(e), e, e.__traceback__)
        result = False, f"{type(e).__name__}: {e}"
    except KeyboardInterrupt:
        result = False, "Cancelled."
    return result
