#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Read configuration files (JSON or YAML) into dictionaries.
"""

from __future__ import annotations
import json
import pathlib
from pclc.utils.typing import Any, Dict, PathLike


def read_config_file(path: PathLike) -> Dict[str, Any]:
    """
    Parse a JSON or YAML file into a dictionary.

    Parameters
    ----------
    path: PathLike
        A `.json`, `.yaml`, or `.yml` file.

    Returns
    -------
    The parsed dictionary (empty for an empty file).
    """
    from pclc.utils.warnings import error
    path = pathlib.Path(path)
    if not path.exists():
        error(f"Config file '{path}' does not exist.", FileNotFoundError)
    text = path.read_text(encoding='utf-8')
    if not text.strip():
        return {}
    if path.suffix.lower() in ('.yaml', '.yml'):
        from pclc.utils.packages import import_yaml
        yaml = import_yaml()
        data = yaml.safe_load(text)
    else:
        data = json.loads(text)
    if not isinstance(data, dict):
        error(f"Config file '{path}' must contain a mapping, not {type(data).__name__}.", ValueError)
    return data


def write_config_file(data: Dict[str, Any], path: PathLike) -> pathlib.Path:
    """Write a dictionary as JSON (or YAML when the suffix asks for it)."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix.lower() in ('.yaml', '.yml'):
        from pclc.utils.packages import import_yaml
        yaml = import_yaml()
        path.write_text(yaml.safe_dump(data, sort_keys=True), encoding='utf-8')
    else:
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + '\n', encoding='utf-8')
    return path
