#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Internal plumbing of the command line: argument parsing, dispatch, and run manifests.
"""
