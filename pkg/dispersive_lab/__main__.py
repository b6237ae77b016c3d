#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import sys

from .cli import main

sys.exit(main())
