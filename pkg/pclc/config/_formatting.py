#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Define default values for the formatting key.
"""

import platform
default_unicode, default_ansi = True, True
if platform.system() == 'Windows':
    default_unicode, default_ansi = False, True

default_formatting_config = {
    'unicode'              : default_unicode,
    'ansi'                 : default_ansi,
    'warnings'             : {
        'unicode'          : {'icon': '🔔'},
        'ascii'            : {'icon': 'WARNING'},
        'ansi'             : {'rich': {'style': 'bold yellow'}},
    },
    'success'              : {
        'unicode'          : {'icon': '🎉'},
        'ascii'            : {'icon': '+'},
        'ansi'             : {'rich': {'style': 'bold bright_green'}},
    },
    'failure'              : {
        'unicode'          : {'icon': '💢'},
        'ascii'            : {'icon': '-'},
        'ansi'             : {'rich': {'style': 'bold red'}},
    },
    'errors'               : {
        'unicode'          : {'icon': '🛑'},
        'ascii'            : {'icon': 'ERROR'},
        'ansi'             : {'rich': {'style': 'bold red'}},
    },
    'info'                 : {
        'unicode'          : {'icon': '💬'},
        'ascii'            : {'icon': 'INFO'},
        'ansi'             : {'rich': {'style': 'bright_magenta'}},
    },
    'debug'                : {
        'unicode'          : {'icon': '🐞'},
        'ascii'            : {'icon': 'DEBUG'},
        'ansi'             : {'rich': {'style': 'cyan'}},
    },
}
