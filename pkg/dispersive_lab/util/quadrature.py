#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

"""Gauss–Legendre panel quadrature for damped oscillatory integrals.

Panels are placed from a "budget" density: a panel ends whenever the accumulated
phase reaches ``max_phase`` or the accumulated width budget reaches one. Inside each
panel a fixed order Gauss–Legendre rule is applied.
"""

import logging
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..error import LabInvalidArgumentError, LabNumericError

logger = logging.getLogger(__name__)

MAX_PHASE = np.pi / 4
MAX_PANELS = 2_000_000
DAMPING_CUTOFF = 1e-16
# -log(DAMPING_CUTOFF) plus margin
DAMPING_EXPONENT = 40.0


@lru_cache(maxsize=16)
def _legendre(order: int) -> tuple:
    return leggauss(order)


def gauss_legendre_rule(edges: np.ndarray, order: int = 16) -> tuple:
    """Builds the composite Gauss–Legendre rule over consecutive panels.

    Args:
        edges: increasing panel edges.
        order: number of nodes per panel.

    Returns:
        tuple with the flat arrays of nodes and weights.
    """

    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise LabInvalidArgumentError('at least two panel edges are required')

    x, w = _legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def budget_panels(lo: float, hi: float, density: Callable[[np.ndarray], np.ndarray], graded: bool = False,
                  samples: int = 4096) -> np.ndarray:
    """Places panel edges on [lo, hi] so that each panel consumes one unit of the given budget density.

    The cumulative budget is integrated on an auxiliary grid (geometric when ``graded``) and
    inverted by interpolation.

    Args:
        lo: left end of the interval.
        hi: right end of the interval.
        density: panels per unit length, evaluated vectorially.
        graded: whether the auxiliary grid is geometric (requires ``lo > 0``).
        samples: size of the auxiliary grid.

    Returns:
        increasing array of edges starting at ``lo`` and ending at ``hi``.
    """

    if not hi > lo:
        raise LabInvalidArgumentError(f'empty integration interval [{lo}, {hi}]')

    if graded:
        if lo <= 0:
            raise LabInvalidArgumentError('graded panels require a positive left end')
        aux = np.geomspace(lo, hi, samples)
    else:
        aux = np.linspace(lo, hi, samples)

    rho = np.asarray(density(aux), dtype=float)
    if not np.all(np.isfinite(rho)):
        raise LabNumericError('panel density is not finite', diagnostics={'lo': lo, 'hi': hi})

    cumulative = np.concatenate(([0.0], np.cumsum(0.5 * (rho[1:] + rho[:-1]) * np.diff(aux))))
    count = int(np.ceil(cumulative[-1])) + 1
    if count > MAX_PANELS:
        raise LabNumericError('quadrature requires too many panels',
                              diagnostics={'panels': count, 'lo': lo, 'hi': hi})

    targets = np.linspace(0.0, cumulative[-1], count + 1)
    edges = np.interp(targets, cumulative, aux)
    edges[0], edges[-1] = lo, hi
    return np.unique(edges)


def phase_panels(lo: float, hi: float, rate: Callable[[np.ndarray], np.ndarray],
                 max_width: Union[float, Callable[[np.ndarray], np.ndarray]] = None,
                 max_phase: float = MAX_PHASE) -> np.ndarray:
    """Panel edges on [lo, hi] with a phase change of at most ``max_phase`` per panel.

    Args:
        lo: left end.
        hi: right end.
        rate: absolute value of the phase derivative.
        max_width: optional cap on the panel width, constant or depending on the position.
        max_phase: phase budget per panel.

    Returns:
        increasing array of edges.
    """

    if max_width is None:
        max_width = hi - lo

    def density(u):
        width = max_width(u) if callable(max_width) else max_width
        return np.abs(rate(u)) / max_phase + 1.0 / width

    return budget_panels(lo, hi, density)


def panel_quad(func: Callable[[np.ndarray], np.ndarray], edges: np.ndarray, order: int = 16) -> complex:
    """Integrates ``func`` with the composite Gauss–Legendre rule over the given panels.

    Raises:
        LabNumericError: if the result is not finite.
    """

    nodes, weights = gauss_legendre_rule(edges, order=order)
    values = func(nodes)
    result = np.sum(values * weights)
    if not np.isfinite(result):
        raise LabNumericError('quadrature did not produce a finite value',
                              diagnostics={'panels': len(edges) - 1, 'lo': edges[0], 'hi': edges[-1]})
    return complex(result)


def half_line_fourier(h: Callable[[np.ndarray], np.ndarray], y: float, theta: float, u_max: float,
                      rate: Callable[[np.ndarray], np.ndarray], order: int = 16, grading: float = 1e-15,
                      max_phase: float = MAX_PHASE) -> complex:
    """Computes ``∫_0^∞ h(ξ) e^{iyξ} dξ`` along the ray ``ξ = u e^{iφ}`` with ``φ = θ·sign(y)``.

    ``h`` must be analytic in the sector swept by the rotation and decay along the ray, so that
    Cauchy's theorem moves the contour. On the rotated ray the oscillating factor becomes
    ``e^{-|y| u sin θ}`` and the integral converges absolutely. Panels are graded geometrically
    towards ``u = 0``, where ``h`` may carry an algebraic singularity, and refined so the phase
    changes by at most ``max_phase`` per panel.

    Args:
        h: amplitude, evaluated at complex arguments.
        y: frequency of the exponential.
        theta: rotation angle in [0, π/2]; ignored when ``y == 0``.
        u_max: length of the ray beyond which the integrand is negligible.
        rate: phase rate of ``h`` along the ray as a function of ``u``.
        order: Gauss–Legendre nodes per panel.
        grading: ratio between the first graded edge and ``u_max``.
        max_phase: phase budget per panel.

    Returns:
        value of the integral.
    """

    phi = 0.0 if y == 0 else float(np.copysign(theta, y))
    direction = np.exp(1j * phi)
    u_lo = grading * u_max
    oscillation = abs(y) * np.cos(phi)

    def density(u):
        return (oscillation + np.abs(rate(u))) / max_phase + 1.0 / (u * np.log(2.0))

    edges = np.concatenate(([0.0], budget_panels(u_lo, u_max, density, graded=True)))

    def integrand(u):
        xi = u * direction
        return h(xi) * np.exp(1j * y * xi) * direction

    return panel_quad(integrand, edges, order=order)


def damping_length(c: complex, a: float, exponent: float = DAMPING_EXPONENT) -> float:
    """Length ``u`` at which ``|e^{-c u^a}|`` falls below ``e^{-exponent}`` (infinite when ``Re c <= 0``)."""

    if c.real <= 0:
        return np.inf
    return (exponent / c.real) ** (1.0 / a)
