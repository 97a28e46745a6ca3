#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Import optional dependencies without failing at module load time.
"""

from __future__ import annotations

import importlib
from pclc.utils.typing import Any, Optional, Union, Tuple
from pclc.utils.packages._packages import packages, all_packages


def attempt_import(
        *names: str,
        warn: bool = True,
    ) -> Union[Any, Tuple[Any, ...]]:
    """
    Import one or more modules by name and return `None` for any that are missing.

    Parameters
    ----------
    *names: str
        Module import names (e.g. `'rich.console'`).

    warn: bool, default True
        If `True`, emit a warning naming the install requirement of a missing module.

    Returns
    -------
    The imported module (or `None`), or a tuple of them when several names are given.

    Examples
    --------
    >>> np = attempt_import('numpy')
    >>> np.__name__
    'numpy'
    """
    modules = []
    for name in names:
        try:
            mod = importlib.import_module(name)
        except ImportError:
            mod = None
            if warn:
                from pclc.utils.warnings import warn as _warn
                root = name.split('.')[0]
                _warn(
                    f"Missing package '{name}'. Install with:\n"
                    + f"    pip install '{all_packages.get(root, root)}'",
                    stack = False,
                )
        modules.append(mod)
    return modules[0] if len(modules) == 1 else tuple(modules)


def import_pandas(debug: bool = False) -> 'pandas':
    """Import pandas (a required dependency)."""
    if debug:
        from pclc.utils.debug import dprint
        dprint("Importing pandas...")
    return attempt_import('pandas')


def import_rich(debug: bool = False) -> Optional['rich']:
    """Import rich if available."""
    return attempt_import('rich', warn=False)


def import_yaml() -> Optional['yaml']:
    """Import PyYAML if available."""
    return attempt_import('yaml')


def get_modules_from_package(package: 'package', names: bool = False, debug: bool = False):
    """
    Import every non-`__init__` module of a package.

    Returns
    -------
    A list of modules, or a tuple of (names, modules) when `names` is `True`.
    """
    import pkgutil
    module_names = sorted(
        info.name for info in pkgutil.iter_modules(package.__path__)
        if not info.ispkg
    )
    if debug:
        from pclc.utils.debug import dprint
        dprint(f"Importing modules {module_names} from '{package.__name__}'.")
    modules = [importlib.import_module(package.__name__ + '.' + name) for name in module_names]
    return (module_names, modules) if names else modules
