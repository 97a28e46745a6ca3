#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Serialize a `DatasetSplit` as a JSON manifest plus a packed little-endian float64 payload.
"""

from __future__ import annotations
import json
import pathlib
import numpy as np
from pclc.utils.typing import Any, Dict, List, PathLike
from pclc.core._window import Window
from pclc.core._split import DatasetSplit

_ARRAYS = ('X', 'Y', 'B', 'future')
_DTYPE = '<f8'


def save_split(split: DatasetSplit, directory: PathLike, extra: Dict[str, Any] = None) -> Dict[str, pathlib.Path]:
    """
    Write `windows.json` and `windows.f64` into `directory`.

    Returns
    -------
    A dictionary of the written paths.
    """
    from pclc.config.static import STATIC_CONFIG
    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = STATIC_CONFIG['files']
    manifest_path = directory / files['windows']
    payload_path = directory / files['windows_payload']

    offset = 0
    parts: Dict[str, Any] = {}
    with open(payload_path, 'wb') as f:
        for part in ('train', 'test'):
            windows = getattr(split, part)
            entry = {
                'windows': [
                    {
                        'event_id': w.event_id,
                        'start': w.start,
                        'dt': w.dt,
                        'anchor': w.anchor,
                        'normalized': w.normalized,
                    }
                    for w in windows
                ],
                'arrays': {},
            }
            for name in _ARRAYS:
                if not windows:
                    continue
                block = np.ascontiguousarray(np.stack([getattr(w, name) for w in windows]), dtype=_DTYPE)
                f.write(block.tobytes())
                entry['arrays'][name] = {'offset': offset, 'shape': list(block.shape)}
                offset += block.size
            parts[part] = entry

    manifest = {
        'format': STATIC_CONFIG['formats']['windows'],
        'dtype': _DTYPE,
        'payload': files['windows_payload'],
        'seed': split.seed,
        'meta': split.meta,
        'parts': parts,
    }
    if extra:
        manifest.update(extra)
    with open(manifest_path, 'w', encoding='utf-8') as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
    return {'manifest': manifest_path, 'payload': payload_path}


def load_split(directory: PathLike) -> DatasetSplit:
    """Read a split written by `save_split()`."""
    from pclc.config.static import STATIC_CONFIG
    from pclc.utils.warnings import error
    from pclc.core._errors import SceneFormatError
    directory = pathlib.Path(directory)
    manifest_path = directory / STATIC_CONFIG['files']['windows']
    if not manifest_path.exists():
        error(f"No window manifest at '{manifest_path}'.", FileNotFoundError)
    with open(manifest_path, 'r', encoding='utf-8') as f:
        manifest = json.load(f)
    major = str(manifest.get('format', '0')).split('.')[0]
    expected = STATIC_CONFIG['formats']['windows'].split('.')[0]
    if major != expected:
        error(
            f"Window format {manifest.get('format')} is incompatible with {STATIC_CONFIG['formats']['windows']}.",
            SceneFormatError,
        )
    payload = np.fromfile(directory / manifest['payload'], dtype=manifest.get('dtype', _DTYPE))

    def _part(name: str) -> List[Window]:
        entry = manifest['parts'][name]
        arrays = {}
        for key, meta in entry['arrays'].items():
            size = int(np.prod(meta['shape']))
            arrays[key] = payload[meta['offset']:meta['offset'] + size].reshape(meta['shape']).astype(np.float64)
        return [
            Window(
                X = arrays['X'][i],
                Y = arrays['Y'][i],
                B = arrays['B'][i],
                future = arrays['future'][i],
                event_id = meta['event_id'],
                start = int(meta['start']),
                dt = float(meta['dt']),
                anchor = float(meta['anchor']),
                normalized = bool(meta['normalized']),
            )
            for i, meta in enumerate(entry['windows'])
        ]

    return DatasetSplit(
        train = _part('train'),
        test = _part('test'),
        seed = int(manifest.get('seed', 0)),
        meta = manifest.get('meta', {}),
    )
