#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

from .errors import (BandLimitWarning, LabBaseError, LabInvalidArgumentError,
                     LabNumericError, LabResolutionError,
                     LabUnsupportedRegimeError)
