#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

"""Fourier multiplier realizations of ``P^t_{a,γ} = e^{i(t + i t^γ)(-Δ)^{a/2}}`` and its special cases."""

import logging
import warnings
from numbers import Number
from typing import Callable, Union

import numpy as np

from ..error import BandLimitWarning, LabInvalidArgumentError
from ..util import ordered_map
from .cutoffs import CutoffFamily
from .grid import (EvolutionParams, GridFunction, GridSpec, SpectrumFunction,
                   inverse_transform, synthesize)

logger = logging.getLogger(__name__)

BAND_LIMIT_TOLERANCE = 1e-12
TRUNCATED_BLOCK = 2 ** 20


def multiplier(xi, p: EvolutionParams):
    """Symbol ``exp(i t|ξ|^a - t^γ |ξ|^a)`` of the propagator.

    Args:
        xi: frequency or array of frequencies.
        p: evolution parameters.

    Returns:
        complex value (or array) of modulus ``exp(-t^γ|ξ|^a) <= 1``.
    """

    r = np.abs(xi) ** p.a
    return np.exp(1j * p.t * r - p.t ** p.gamma * r)


def _check_band_limit(values: np.ndarray, what: str) -> None:
    magnitude = np.abs(values)
    peak = magnitude.max()
    if peak > 0 and max(magnitude[0], magnitude[-1]) > BAND_LIMIT_TOLERANCE * peak:
        warnings.warn(f'{what}: damped spectrum is {max(magnitude[0], magnitude[-1]) / peak:.3e} of its peak at the '
                      f'window edge, the band-limited result is truncated', BandLimitWarning, stacklevel=3)


def apply_multiplier(fhat: SpectrumFunction, symbol: np.ndarray, grid: GridSpec = None,
                     what: str = 'propagate') -> GridFunction:
    """Multiplies the spectrum by the sampled symbol and transforms back onto ``grid``."""

    if not isinstance(fhat, SpectrumFunction):
        raise LabInvalidArgumentError('fhat must be a SpectrumFunction')

    values = fhat.values * symbol
    _check_band_limit(values, what)
    return inverse_transform(fhat.with_values(values), grid)


def propagate(fhat: SpectrumFunction, p: EvolutionParams, grid: GridSpec = None) -> GridFunction:
    """Evaluates ``P^t_{a,γ} f`` on a spatial grid.

    Args:
        fhat: spectrum of the initial datum.
        p: evolution parameters.
        grid: spatial grid; the natural grid of ``fhat`` when omitted.

    Returns:
        the evolved function.

    Warns:
        BandLimitWarning: if the damped spectrum is not negligible at the window edges.
    """

    return apply_multiplier(fhat, multiplier(fhat.points, p), grid)


def evaluate_at(fhat: SpectrumFunction, p: EvolutionParams, xs) -> np.ndarray:
    """Evaluates ``P^t_{a,γ} f`` at arbitrary points by direct summation."""

    return synthesize(fhat, xs, weights=multiplier(fhat.points, p))


def _check_time(t: float, upper: float = np.inf) -> float:
    if not isinstance(t, Number) or not np.isfinite(t) or t < 0 or t >= upper:
        raise LabInvalidArgumentError(f't must be a finite number >= 0, got {t}')
    return float(t)


def _check_order(a: float) -> float:
    if not isinstance(a, Number) or not np.isfinite(a) or a <= 0:
        raise LabInvalidArgumentError('a must be a finite number > 0')
    return float(a)


def dissipative_propagate(fhat: SpectrumFunction, t: float, a: float, grid: GridSpec = None) -> GridFunction:
    """Evaluates the fractional heat semigroup ``e^{-t(-Δ)^{a/2}} f`` (multiplier ``e^{-t|ξ|^a}``), ``t >= 0``."""

    t, a = _check_time(t), _check_order(a)
    return apply_multiplier(fhat, np.exp(-t * np.abs(fhat.points) ** a), grid, what='dissipative_propagate')


def generator_propagate(fhat: SpectrumFunction, t: float, a: float, grid: GridSpec = None) -> GridFunction:
    """Evaluates ``t(-Δ)^{a/2} e^{-t(-Δ)^{a/2}} f`` (multiplier ``t|ξ|^a e^{-t|ξ|^a}``)."""

    t, a = _check_time(t), _check_order(a)
    r = t * np.abs(fhat.points) ** a
    return apply_multiplier(fhat, r * np.exp(-r), grid, what='generator_propagate')


def complex_semigroup_propagate(fhat: SpectrumFunction, t: float, a: float, grid: GridSpec = None) -> GridFunction:
    """Evaluates ``e^{-(1+i)t(-Δ)^{a/2}} f``, whose kernel is the Poisson type kernel ``L(x, t, a)``."""

    t, a = _check_time(t), _check_order(a)
    return apply_multiplier(fhat, np.exp(-(1 + 1j) * t * np.abs(fhat.points) ** a), grid,
                            what='complex_semigroup_propagate')


def ginzburg_landau_propagate(fhat: SpectrumFunction, t: float, theta: float, grid: GridSpec = None) -> GridFunction:
    """Solves the linear Ginzburg–Landau equation ``∂_t u - e^{iθ} Δu = 0`` with ``u(0) = f``.

    The solution has multiplier ``e^{-e^{iθ} t ξ²}``, of modulus ``e^{-t ξ² cos θ} <= 1``.
    ``P^t_{2,1}`` has multiplier ``e^{-(1-i) t ξ²}`` and therefore equals this evolution at
    ``θ = -π/4`` and time ``√2·t``.

    Args:
        fhat: spectrum of the initial datum.
        t: time, >= 0.
        theta: angle in [-π/2, π/2].
        grid: spatial grid.

    Returns:
        the evolved function.
    """

    t = _check_time(t)
    if not isinstance(theta, Number) or not -np.pi / 2 <= theta <= np.pi / 2:
        raise LabInvalidArgumentError(f'theta must be in [-pi/2, pi/2], got {theta}')

    return apply_multiplier(fhat, np.exp(-np.exp(1j * theta) * t * fhat.points ** 2), grid,
                            what='ginzburg_landau_propagate')


def propagate_truncated(fhat: SpectrumFunction, p: EvolutionParams, N: float,
                        txmap: Union[Callable[[np.ndarray], np.ndarray], np.ndarray, None] = None,
                        cutoffs: CutoffFamily = None, grid: GridSpec = None, threads: int = None) -> GridFunction:
    """Evaluates the truncated operator with variable time

        ``μ(x/N) ∫ f̂(ξ) e^{i t(x)|ξ|^a} e^{-t(x)^γ |ξ|^a} e^{ixξ} μ(ξ/N) dξ``

    by direct quadrature at every grid point (cost ``O(n_x·n_ξ)``).

    Args:
        fhat: spectrum of the datum.
        p: evolution parameters; ``a`` and ``gamma`` are used, ``t`` is the constant time when ``txmap`` is None.
        N: frequency scale, >= 1.
        txmap: time selection ``x ↦ t(x)``, either a callable or an array with one time per grid point.
        cutoffs: cutoff family providing ``mu``.
        grid: spatial grid; the natural grid of ``fhat`` when omitted.
        threads: maximum number of worker threads.

    Returns:
        the sampled function.
    """

    if not isinstance(N, Number) or N < 1:
        raise LabInvalidArgumentError('N must be a number >= 1')

    cutoffs = cutoffs if cutoffs is not None else CutoffFamily()
    grid = grid if grid is not None else fhat.natural_grid()
    xs = grid.points

    if txmap is None:
        times = np.full(xs.size, p.t)
    elif callable(txmap):
        times = np.asarray(txmap(xs), dtype=float) * np.ones(xs.size)
    else:
        times = np.asarray(txmap, dtype=float)

    if times.shape != xs.shape:
        raise LabInvalidArgumentError('txmap must provide one time per grid point')

    if not np.all((times > 0) & (times < 1)):
        raise LabInvalidArgumentError('txmap must map every grid point into (0, 1)')

    # restrict the quadrature to the nonzero part of the truncated spectrum
    weights = fhat.values * cutoffs.mu(fhat.points / N)
    support = weights != 0
    xi = fhat.points[support]
    r = np.abs(xi) ** p.a
    amplitude = weights[support] * fhat.dxi

    values = np.zeros(xs.size, dtype=complex)
    if xi.size == 0:
        return GridFunction.on(grid, values)

    block = max(1, TRUNCATED_BLOCK // xi.size)
    starts = list(range(0, xs.size, block))

    def evaluate(start):
        x = xs[start:start + block]
        t = times[start:start + block]
        phase = np.outer(x, xi) + np.outer(t, r)
        damping = np.outer(t ** p.gamma, r)
        return np.exp(1j * phase - damping) @ amplitude

    logger.debug('truncated propagation of %d points over %d frequencies', xs.size, xi.size)
    for start, chunk in zip(starts, ordered_map(evaluate, starts, threads=threads)):
        values[start:start + block] = chunk

    return GridFunction.on(grid, values * cutoffs.mu(xs / N))
