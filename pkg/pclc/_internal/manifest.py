#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Record what an action read and wrote so a run can be reproduced and compared.
"""

from __future__ import annotations
import datetime
import json
import pathlib
from dataclasses import dataclass, field
from pclc.utils.typing import Any, Dict, Optional, PathLike

_TIMESTAMP_FIELDS = ('started', 'finished')


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')


def format_compatible(found: str, expected: str) -> bool:
    """Formats are compatible when their major versions agree."""
    import semver
    try:
        return semver.Version.parse(str(found)).major == semver.Version.parse(str(expected)).major
    except ValueError:
        return False


@dataclass
class ExperimentManifest:
    """
    The declared inputs and outputs of one action run.

    `config_hash` covers the effective configuration and `output_hashes` the bytes
    of every declared output, so two runs with the same inputs and seed produce
    the same `hash` regardless of when they ran.
    """
    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    output_hashes: Dict[str, str] = field(default_factory=dict)
    version: str = ''
    formats: Dict[str, str] = field(default_factory=dict)
    started: str = field(default_factory=_now)
    finished: Optional[str] = None

    def __post_init__(self):
        from pclc.config import __version__
        from pclc.config.static import STATIC_CONFIG
        if not self.version:
            self.version = __version__
        if not self.formats:
            self.formats = dict(STATIC_CONFIG['formats'])

    @property
    def config_hash(self) -> str:
        from pclc.utils.hashing import hash_object
        from pclc.utils.misc import jsonable
        return hash_object(jsonable(self.config))

    @property
    def hash(self) -> str:
        """Digest of everything but the timestamps."""
        from pclc.utils.hashing import hash_object
        body = {k: v for k, v in self.to_dict().items() if k not in _TIMESTAMP_FIELDS + ('hash',)}
        return hash_object(body)

    def add_input(self, name: str, path: PathLike) -> 'ExperimentManifest':
        self.inputs[name] = pathlib.Path(path).as_posix()
        return self

    def add_output(self, name: str, path: PathLike) -> 'ExperimentManifest':
        self.outputs[name] = pathlib.Path(path).as_posix()
        return self

    def finish(self, base: Optional[PathLike] = None) -> 'ExperimentManifest':
        """
        Hash the declared outputs and stamp the finish time.

        Output hashes are keyed relative to `base` when given, so moving the
        output directory does not change the manifest hash.
        """
        from pclc.utils.hashing import hash_paths
        from pclc.utils.warnings import error
        missing = [name for name, path in self.outputs.items() if not pathlib.Path(path).exists()]
        if missing:
            error(f"Declared outputs were not written: {missing}", FileNotFoundError)
        self.output_hashes = hash_paths(self.outputs)
        if base is not None:
            base = pathlib.Path(base)
            self.outputs = {
                name: _relative(path, base)
                for name, path in self.outputs.items()
            }
        self.finished = _now()
        return self

    def to_dict(self) -> Dict[str, Any]:
        from pclc.utils.misc import jsonable
        return {
            'format': self.formats.get('manifest'),
            'command': self.command,
            'config': jsonable(self.config),
            'config_hash': self.config_hash,
            'seed': self.seed,
            'inputs': dict(sorted(self.inputs.items())),
            'outputs': dict(sorted(self.outputs.items())),
            'output_hashes': dict(sorted(self.output_hashes.items())),
            'version': self.version,
            'formats': dict(sorted(self.formats.items())),
            'started': self.started,
            'finished': self.finished,
        }

    def write(self, path: PathLike) -> pathlib.Path:
        """Write the manifest (with its `hash`) as JSON."""
        path = pathlib.Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = self.to_dict()
        doc['hash'] = self.hash
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(doc, f, indent=2, sort_keys=True)
        return path

    @classmethod
    def read(cls, path: PathLike) -> 'ExperimentManifest':
        """
        Read a manifest written by `write()`.

        Raises
        ------
        `ValueError` if the manifest format is incompatible.
        """
        from pclc.config.static import STATIC_CONFIG
        from pclc.utils.warnings import error
        with open(path, 'r', encoding='utf-8') as f:
            doc = json.load(f)
        expected = STATIC_CONFIG['formats']['manifest']
        if not format_compatible(doc.get('format', '0.0.0'), expected):
            error(f"Manifest format {doc.get('format')} is incompatible with {expected}.", ValueError)
        return cls(
            command = doc['command'],
            config = doc.get('config', {}),
            seed = doc.get('seed'),
            inputs = doc.get('inputs', {}),
            outputs = doc.get('outputs', {}),
            output_hashes = doc.get('output_hashes', {}),
            version = doc.get('version', ''),
            formats = doc.get('formats', {}),
            started = doc.get('started') or _now(),
            finished = doc.get('finished'),
        )


def _relative(path: str, base: pathlib.Path) -> str:
    try:
        return pathlib.Path(path).resolve().relative_to(base.resolve()).as_posix()
    except ValueError:
        return pathlib.Path(path).as_posix()


def manifest_path_for(out: PathLike) -> pathlib.Path:
    """`<out>/manifest.json` for a directory, `<stem>.manifest.json` beside a file."""
    from pclc.config.static import STATIC_CONFIG
    out = pathlib.Path(out)
    name = STATIC_CONFIG['files']['manifest']
    if out.suffix:
        return out.parent / (out.stem + '.' + name)
    return out / name
