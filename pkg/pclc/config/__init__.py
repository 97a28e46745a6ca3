#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Build the configuration dictionary from defaults, the user file, and environment patches.
"""

from __future__ import annotations

import copy
import os
from threading import RLock
from pclc.utils.typing import Any, Dict, Optional

from pclc.config._version import __version__
from pclc.config.static import STATIC_CONFIG
from pclc.config._patch import apply_patch_to_config
from pclc.config._read_config import read_config_file, write_config_file

__all__ = ('get_config', 'set_config', 'read_config_file', 'write_config_file', '__version__')
_locks = {'config': RLock()}

config: Optional[Dict[str, Any]] = None


def _config(reload: bool = False) -> Dict[str, Any]:
    """
    Assemble the configuration: defaults, then the user file, then `PCLC_CONFIG`.
    """
    global config
    with _locks['config']:
        if config is not None and not reload:
            return config
        from pclc.config._default import default_config
        from pclc.config._paths import get_user_config_path
        cf = copy.deepcopy(default_config)
        user_path = get_user_config_path()
        if user_path is not None:
            try:
                cf = apply_patch_to_config(cf, read_config_file(user_path))
            except Exception as e:
                from pclc.utils.warnings import warn
                warn(f"Skipping unreadable config file '{user_path}':\n{e}", stack=False)

        env_var = STATIC_CONFIG['environment']['config']
        if os.environ.get(env_var, '').strip():
            from pclc.utils.misc import string_to_dict
            try:
                cf = apply_patch_to_config(cf, string_to_dict(os.environ[env_var].strip()))
            except Exception as e:
                from pclc.utils.warnings import warn
                warn(
                    f"Environment variable {env_var} is set but cannot be parsed "
                    + f"(JSON or simple 'a:b:1' format expected):\n{e}",
                    stack = False,
                )
        config = cf
        return config


def set_config(cf: Dict[str, Any]) -> Dict[str, Any]:
    """
    Set the configuration dictionary.
    """
    global config
    if not isinstance(cf, dict):
        from pclc.utils.warnings import error
        error(f"Invalid value for config: {cf}", TypeError)
    with _locks['config']:
        config = cf
    return config


def get_config(
        *keys: str,
        patch: bool = True,
        warn: bool = True,
        debug: bool = False,
    ) -> Any:
    """
    Return the configuration dictionary.
    If positional arguments are provided, index by the keys.
    Raises a warning if invalid keys are provided.

    Parameters
    ----------
    keys: str:
        List of strings to index.

    patch: bool, default True
        If `True`, fall back to the default value when a key is missing from the loaded config.

    warn: bool, default True
        If `True`, warn about invalid keys.

    Returns
    -------
    A deep copy of the value in the configuration, indexed by the provided keys.

    Examples
    --------
    >>> get_config('analytics', 'wavelet', 'threshold')
    0.1
    >>> get_config('does', 'not', 'exist')
    UserWarning: Invalid keys in config: ('does', 'not', 'exist')
    """
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Indexing keys: {keys}")

    c = _config()
    invalid_keys = False
    for k in keys:
        try:
            c = c[k]
        except (KeyError, TypeError, IndexError):
            invalid_keys = True
            break

    if invalid_keys and patch:
        from pclc.config._default import default_config
        c, invalid_keys = default_config, False
        for k in keys:
            try:
                c = c[k]
            except (KeyError, TypeError, IndexError):
                invalid_keys = True
                break

    if invalid_keys:
        if warn:
            from pclc.utils.warnings import warn as _warn
            _warn(f"Invalid keys in config: {keys}", stacklevel=3)
        return None

    return copy.deepcopy(c)
