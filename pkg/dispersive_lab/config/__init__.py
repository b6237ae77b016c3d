#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

from .settings import LabSettings, resolve_max_grid, resolve_threads
