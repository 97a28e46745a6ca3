#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Resolve the user configuration directory.
"""

import os
import pathlib
from pclc.config.static import STATIC_CONFIG


def get_root_dir() -> pathlib.Path:
    """Return the directory named by `PCLC_ROOT` (default `~/.config/pclc`)."""
    env_var = STATIC_CONFIG['environment']['root']
    if os.environ.get(env_var):
        return pathlib.Path(os.environ[env_var]).expanduser()
    return pathlib.Path.home() / '.config' / 'pclc'


def get_user_config_path():
    """Return the first existing user config file, if any."""
    root = get_root_dir()
    for name in STATIC_CONFIG['config']['file_names']:
        path = root / name
        if path.exists():
            return path
    return None
