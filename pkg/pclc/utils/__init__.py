#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Shared helpers: typing aliases, console output, hashing, and worker pools.
"""
