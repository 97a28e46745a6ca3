#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The `pclc` command-line entry point.
"""

import sys, copy


def main(sysargs: list = None) -> None:
    """Main CLI entry point."""
    if sysargs is None:
        sysargs = copy.deepcopy(sys.argv[1:])

    ### Catch help flags.
    if '--help' in sysargs or '-h' in sysargs:
        from pclc._internal.arguments._parser import parse_help
        parse_help(sysargs)
        return _exit()

    ### Catch version flags.
    if '--version' in sysargs or '-V' in sysargs:
        from pclc._internal.arguments._parser import parse_version
        parse_version(sysargs)
        return _exit()

    from pclc._internal.entry import entry
    return_tuple = entry(sysargs)
    if not isinstance(return_tuple, tuple):
        return_tuple = False, f"Action returned {return_tuple!r} instead of a (success, message) tuple."

    if '--nopretty' in sysargs:
        if not return_tuple[0]:
            print(return_tuple[1], file=sys.stderr)
    else:
        from pclc.utils.formatting import print_tuple
        print_tuple(return_tuple, upper_padding=1)
    return _exit(0 if return_tuple[0] is True else 1)


def _exit(return_code: int = 0) -> None:
    sys.exit(return_code)


if __name__ == "__main__":
    main(sys.argv[1:])
