#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Stable content hashes for configs, files, and manifests.
"""

from __future__ import annotations
import hashlib
import json
import pathlib
from pclc.utils.typing import Any, Dict, PathLike


def canonical_json(obj: Any) -> str:
    """Serialize `obj` as JSON with sorted keys and no incidental whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), default=str)


def hash_object(obj: Any) -> str:
    """SHA-256 of the canonical JSON form of `obj`."""
    return hashlib.sha256(canonical_json(obj).encode('utf-8')).hexdigest()


def hash_file(path: PathLike, chunksize: int = 1 << 20) -> str:
    """SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(chunksize), b''):
            digest.update(chunk)
    return digest.hexdigest()


def hash_paths(paths: Dict[str, PathLike]) -> Dict[str, str]:
    """Hash each file (or every file below each directory), keyed by relative name."""
    hashes = {}
    for key, path in sorted(paths.items()):
        path = pathlib.Path(path)
        if path.is_dir():
            for sub in sorted(p for p in path.rglob('*') if p.is_file()):
                hashes[key + '/' + sub.relative_to(path).as_posix()] = hash_file(sub)
        elif path.exists():
            hashes[key] = hash_file(path)
    return hashes
