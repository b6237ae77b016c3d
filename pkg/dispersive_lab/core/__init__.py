#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

from .cutoffs import CutoffFamily, dyadic_scales, plateau_bump, smooth_step
from .dimension import (DimensionRegime, DivergenceProbe,
                        WeightedMaximalReport, box_counts, box_dimension,
                        dim_bound_exponent, divergence_probe, energy,
                        energy_exponent, frostman_probe,
                        weighted_maximal_integral)
from .grid import (EvolutionParams, GridFunction, GridSpec, SpectrumFunction,
                   forward_transform, inverse_transform, sobolev_norm,
                   synthesize)
from .kernels import (KernelCheck, OscillatoryKernelParams, bessel_kernel,
                      bessel_kernel_check, bessel_potential,
                      bound_ratio_sweep, fractional_heat_kernel,
                      heat_bound_ratio, lambda_l1_norm,
                      lambda_l1_partial_sums, lambda_M, local_bound_exponents,
                      local_bound_integral, local_kernel_bound,
                      local_ratio_sweep, oscillatory_kernel, poisson_bound_ratio,
                      poisson_kernel, sigma_exponent, summability_exponent,
                      term_slope)
from .maximal import (MaximalResult, ScanDomain, SemigroupKind, TimeGrid,
                      convergence_profile, domination_check, hardy_littlewood,
                      level_set_measure, lp_ratio_scan, maximal_function,
                      strong_ratio_scan, undamped_comparison, weak_type_scan)
from .measure import (DiscreteMeasure, cantor_dimension, cantor_intervals,
                      cantor_measure)
from .propagator import (apply_multiplier, complex_semigroup_propagate,
                         dissipative_propagate, evaluate_at,
                         generator_propagate, ginzburg_landau_propagate,
                         multiplier, propagate, propagate_truncated)
from .sharpness import (SharpnessVerdict, build_f_A, build_f_nu, bump_radius,
                        convergence_threshold, designated_length,
                        designated_profile, designated_ratio_scan, designated_time,
                        designated_witness, f_nu_designated_times,
                        f_nu_family, hs_norm_of_counterexample,
                        lower_bound_scan_f_A, lower_bound_scan_f_nu,
                        phase_control, sharpness_verdict, weak_22_ratio_scan)
