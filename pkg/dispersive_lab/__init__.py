#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

from .config import *
from .core import *
from .error import *
from .util import *
