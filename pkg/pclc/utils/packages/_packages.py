#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Directory of necessary packages

packages dictionary is structured in the following schema:
    {
        <group> : {
            <import_name> : <install_name>
        }
    }
"""

from __future__ import annotations
from typing import Dict

packages: Dict[str, Dict[str, str]] = {
    'required': {
        'numpy'                      : 'numpy>=1.21.0',
        'pandas'                     : 'pandas>=1.3.0',
        'pydantic'                   : 'pydantic>=2.0.0',
        'yaml'                       : 'PyYAML>=5.3.1',
        'semver'                     : 'semver>=3.0.0',
        'more_itertools'             : 'more-itertools>=8.7.0',
    },
    'formatting': {
        'typing_extensions'          : 'typing_extensions>=4.4.0',
        'colorama'                   : 'colorama>=0.4.6',
        'rich'                       : 'rich>=12.4.4',
    },
    'test': {
        'pytest'                     : 'pytest>=7.0.0',
        'hypothesis'                 : 'hypothesis>=6.50.0',
    },
}
packages['full'] = {}
for group, import_names in packages.items():
    if group == 'full':
        continue
    packages['full'].update(import_names)

all_packages = {
    import_name: install_name
    for group in packages.values()
    for import_name, install_name in group.items()
}
