#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.


from .parallel import ordered_map
from .parser import dump_json, load_json, parse_float_list, parse_sweep
from .quadrature import (budget_panels, damping_length, gauss_legendre_rule,
                         half_line_fourier, panel_quad, phase_panels)
from .regression import RegressionReport
