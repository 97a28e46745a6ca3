#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Default actions available to the pclc CLI.
"""

from __future__ import annotations
from pclc.utils.typing import Callable, Any, Optional, Union, List, Dict, SuccessTuple
from pclc.utils.packages import get_modules_from_package

### build __all__ from other .py files in this package
import sys
modules = get_modules_from_package(
    sys.modules[__name__],
    names = False,
)
__all__ = ['actions', 'get_action', 'get_main_action_name']

### Build the actions dictionary from the public function named after each module.
from inspect import getmembers, isfunction
actions = {}

for module in modules:
    actions.update(
        dict(
            [
                (ob[0], ob[1])
                    for ob in getmembers(module)
                        if isfunction(ob[1])
                            ### check that the function belongs to the module
                            and ob[0] == module.__name__.split('.')[-1]
                            and ob[0][0] != '_'
            ]
        )
    )


def get_action(
        action: Union[str, List[str]],
        _actions: Optional[Dict[str, Callable[[Any], Any]]] = None,
    ) -> Union[Callable[[Any], Any], None]:
    """
    Return a function corresponding to the given action list.

    Examples
    --------
    >>> get_action(['show', 'config']).__name__
    'show'
    """
    if _actions is None:
        _actions = actions
    if isinstance(action, str):
        action = [action]
    if not action:
        return None
    return _actions.get(action[0], None)


def get_main_action_name(
        action: Union[List[str], str],
        _actions: Optional[Dict[str, Callable[[Any], SuccessTuple]]] = None,
    ) -> Union[str, None]:
    """Return the name of the main action from an action list."""
    action_function = get_action(action, _actions=_actions)
    return None if action_function is None else action_function.__name__
