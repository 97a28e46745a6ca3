#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Helpers shared by the actions: argument checks, config files, and manifests.
"""

from __future__ import annotations
import pathlib
from pclc.utils.typing import Any, Dict, Optional, SuccessTuple, Union, PathLike


def missing_arguments(kw: Dict[str, Any], *names: str) -> Union[SuccessTuple, None]:
    """Return a failed `SuccessTuple` naming the missing flags, or `None`."""
    from pclc._internal.arguments._parser import get_arguments_triggers
    triggers = get_arguments_triggers()
    missing = [name for name in names if kw.get(name) in (None, '', [])]
    if not missing:
        return None
    flags = [triggers.get(name, ('--' + name,))[-1] for name in missing]
    return False, f"Missing required arguments: {', '.join(flags)}"


def read_action_config(path: Optional[PathLike], section: Optional[str] = None) -> Dict[str, Any]:
    """
    Read a JSON or YAML config file given with `--config`.

    If the file has a top-level key named `section`, only that part is returned,
    so one file can hold the settings of several actions.
    """
    if not path:
        return {}
    from pclc.config import read_config_file
    from pclc.utils.warnings import error
    cf = read_config_file(path)
    if not isinstance(cf, dict):
        error(f"Config file '{path}' must hold a mapping.", ValueError)
    if section is not None and isinstance(cf.get(section), dict):
        return dict(cf[section])
    return cf


def start_manifest(command: str, config: Dict[str, Any], /, seed: Optional[int] = None, **inputs: Any):
    """Begin a manifest with the run's configuration and inputs (`None` inputs are skipped)."""
    from pclc._internal.manifest import ExperimentManifest
    manifest = ExperimentManifest(command=command, config=config, seed=seed)
    for name, path in inputs.items():
        if path is None:
            continue
        if isinstance(path, (list, tuple)):
            for i, p in enumerate(path):
                manifest.add_input(f"{name}_{i}", p)
        else:
            manifest.add_input(name, path)
    return manifest


def close_manifest(manifest, out: PathLike) -> pathlib.Path:
    """Hash the outputs and write the manifest next to them."""
    from pclc._internal.manifest import manifest_path_for
    out = pathlib.Path(out)
    base = out.parent if out.suffix else out
    manifest.finish(base=base)
    return manifest.write(manifest_path_for(out))
