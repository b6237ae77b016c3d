#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import enum
import logging
from numbers import Number
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from ..error import LabInvalidArgumentError, LabUnsupportedRegimeError
from ..util import RegressionReport, ordered_map
from .grid import (EvolutionParams, GridSpec, SpectrumFunction, inverse_transform,
                   sobolev_norm)
from .maximal import MaximalResult, TimeGrid, sup_over_times, maximal_function
from .measure import DiscreteMeasure, cantor_measure
from .propagator import propagate

logger = logging.getLogger(__name__)

ENERGY_BLOCK = 1024
BOX_OFFSET = 1e-9


def _check_s(s: float, upper: float = None) -> float:
    if not isinstance(s, Number) or isinstance(s, bool) or not np.isfinite(s) or s <= 0:
        raise LabInvalidArgumentError(f's must be a finite number > 0, got {s}')
    if upper is not None and s >= upper:
        raise LabInvalidArgumentError(f's must be < {upper}, got {s}')
    return float(s)


def energy(mu: DiscreteMeasure, s: float, cell_width: float = None, threads: int = None) -> float:
    """Discrete ``s``-energy ``Σ_{i≠j} w_i w_j |x_i - x_j|^{-s}``.

    The double sum is tiled in blocks of rows and reduced in block order. Coincident atoms, or a single atom
    without ``cell_width``, give ``inf``.

    Args:
        mu: discrete measure.
        s: energy exponent > 0.
        cell_width: if given, each atom is spread uniformly on a cell of this width and the self-energy
            ``w_i² 2h^{-s}/((1-s)(2-s))`` of the cells is added (requires ``s < 1``).
        threads: maximum number of worker threads.

    Returns:
        the energy, or ``inf``.
    """

    s = _check_s(s, upper=None if cell_width is None else 1.0)

    if not isinstance(mu, DiscreteMeasure):
        raise LabInvalidArgumentError('mu must be a DiscreteMeasure')

    self_energy = 0.0
    if cell_width is not None:
        if not isinstance(cell_width, Number) or cell_width <= 0:
            raise LabInvalidArgumentError('cell_width must be > 0')
        self_energy = float(np.sum(mu.weights ** 2)) * 2.0 * cell_width ** -s / ((1.0 - s) * (2.0 - s))
    elif mu.size == 1:
        return np.inf

    if np.unique(mu.positions).size < mu.size:
        logger.debug('coincident atoms, infinite %s-energy', s)
        return np.inf

    x = mu.positions.reshape(-1, 1)
    w = mu.weights

    def block(start):
        rows = slice(start, start + ENERGY_BLOCK)
        d = cdist(x[rows], x)
        i = np.arange(d.shape[0])
        d[i, start + i] = np.inf
        return float(w[rows] @ (d ** -s) @ w)

    partial = ordered_map(block, range(0, mu.size, ENERGY_BLOCK), threads=threads)
    return float(np.sum(partial)) + self_energy


class DimensionRegime(enum.Enum):
    """Parameter regimes of the divergence-set dimension bounds.

    ``regular``: ``a ≠ 1`` and ``s`` at or above the Schrödinger range, bound ``1 - 2s``.
    ``fractional_below``: ``0 < a < 1``, ``γ > 1``, ``s`` between the sharp threshold and 1/4.
    ``fractional_above``: ``a > 1``, ``1 < γ < a/(a-1)``, ``s`` between the threshold and 1/4.
    ``wave``: ``a = 1``, bound ``max(1 - 2s, γ(1 - 2s))``.
    """
    regular = 0
    fractional_below = 1
    fractional_above = 2
    wave = 3

    @classmethod
    def from_string(cls, _str: str) -> 'DimensionRegime':
        name = _str.replace('-', '_')
        if name not in [e.name for e in cls]:
            raise LabInvalidArgumentError(f'unknown regime {_str}')
        return cls[name]

    @classmethod
    def all(cls) -> List[str]:
        return [e.name for e in cls]


def _sigma(a: float, gamma: float, s: float) -> float:
    return 1.0 - 2.0 * s + a * (4.0 * s - 1.0) * (gamma - 1.0) / (2.0 * ((a - 1.0) * gamma - a))


def energy_exponent(a: float, gamma: float, s: float) -> Tuple[float, DimensionRegime]:
    """Exponent ``σ`` of the energy ``I_σ(μ)`` controlling ``∫ P*f dμ`` for ``f ∈ H^s``, with its regime.

    Raises:
        LabUnsupportedRegimeError: if ``(a, γ, s)`` lies in none of the regimes.
    """

    for name, value in (('a', a), ('gamma', gamma), ('s', s)):
        if not isinstance(value, Number) or isinstance(value, bool) or not np.isfinite(value):
            raise LabInvalidArgumentError(f'{name} must be a finite number, got {value}')

    if a <= 0 or gamma <= 0:
        raise LabInvalidArgumentError('a and gamma must be > 0')

    loss = max(0.0, 1.0 - 1.0 / gamma)

    if a == 1:
        if loss / 2.0 < s <= 0.5:
            return max(1.0 - 2.0 * s, gamma * (1.0 - 2.0 * s)), DimensionRegime.wave
    elif (gamma <= 1 and 0 < s <= 0.5) or (gamma > 1 and 0.25 <= s <= 0.5):
        return 1.0 - 2.0 * s, DimensionRegime.regular
    elif a < 1 and gamma > 1 and a / 4.0 * loss < s < 0.25:
        return _sigma(a, gamma, s), DimensionRegime.fractional_below
    elif a > 1 and 1 < gamma < a / (a - 1.0) and a / 4.0 * loss < s < 0.25:
        return _sigma(a, gamma, s), DimensionRegime.fractional_above

    raise LabUnsupportedRegimeError('dimension bound', a=a, gamma=gamma, s=s)


def dim_bound_exponent(a: float, gamma: float, s: float) -> float:
    """Upper bound for the dimension of the divergence set of ``P^t_{a,γ} f``, ``f ∈ H^s``, clamped to [0, 1].

    Examples:
        ``dim_bound_exponent(0.5, 2, 0.3) == 0.4``; ``dim_bound_exponent(1, 3, 0.4) == 0.6``.
    """

    value, _ = energy_exponent(a, gamma, s)
    return float(min(1.0, max(0.0, value)))


class WeightedMaximalReport:
    """Weighted maximal integral ``Σ w_i P*f(x_i)`` and its quotient by ``I_σ(μ)^{1/2} ‖f‖_{H^s}``.

    Attributes:
        integral: the weighted integral.
        s: regularity index of the comparison (None if not requested).
        sigma: energy exponent of the comparison.
        regime: regime of ``sigma``.
        energy: ``I_σ(μ)``.
        hs_norm: ``‖f‖_{H^s}``.
        ratio: the quotient (0 for a zero integral).
    """

    def __init__(self, integral: float, s: float = None, sigma: float = None, regime: DimensionRegime = None,
                 energy: float = None, hs_norm: float = None, ratio: float = None) -> None:
        self.integral = integral
        self.s = s
        self.sigma = sigma
        self.regime = regime
        self.energy = energy
        self.hs_norm = hs_norm
        self.ratio = ratio

    def __str__(self):
        return f'<WeightedMaximalReport integral={self.integral:.6g} sigma={self.sigma} ratio={self.ratio}>'

    def to_dict(self) -> Dict[str, Any]:
        return {'integral': self.integral, 's': self.s, 'sigma': self.sigma,
                'regime': None if self.regime is None else self.regime.name,
                'energy': self.energy, 'hs_norm': self.hs_norm, 'ratio': self.ratio}


def weighted_maximal_integral(fhat: SpectrumFunction, a: float, gamma: float, tg: TimeGrid, mu: DiscreteMeasure,
                              s: float = None, grid: GridSpec = None, threads: int = None) -> WeightedMaximalReport:
    """Integrates the gridded maximal function against ``mu``, linearly interpolated at the atoms.

    Args:
        fhat: spectrum of the datum.
        a: dispersion order.
        gamma: dissipation exponent.
        tg: time grid.
        mu: measure supported in [-1, 1].
        s: if given, the quotient by ``I_σ(μ)^{1/2} ‖f‖_{H^s}`` is computed for the regime of ``(a, γ, s)``.
        grid: spatial grid covering the support of ``mu``; the natural grid of ``fhat`` when omitted.
        threads: maximum number of worker threads.

    Returns:
        a :obj:`dispersive_lab.core.dimension.WeightedMaximalReport`.
    """

    if not isinstance(mu, DiscreteMeasure):
        raise LabInvalidArgumentError('mu must be a DiscreteMeasure')

    if not mu.in_unit_ball():
        raise LabInvalidArgumentError('mu must be supported in [-1, 1]')

    grid = grid if grid is not None else fhat.natural_grid()
    xs = grid.points
    if mu.positions.min() < xs[0] or mu.positions.max() > xs[-1]:
        raise LabInvalidArgumentError(f'grid {grid} does not cover the support of mu')

    result = maximal_function(fhat, a, gamma, tg, grid, threads=threads)
    integral = float(mu.weights @ np.interp(mu.positions, xs, result.values))
    report = WeightedMaximalReport(integral)

    if s is not None:
        sigma, regime = energy_exponent(a, gamma, s)
        I = energy(mu, sigma, threads=threads) if sigma > 0 else mu.total_mass ** 2
        norm = sobolev_norm(fhat, s)
        ratio = 0.0 if integral == 0 else integral / (np.sqrt(I) * norm)
        report = WeightedMaximalReport(integral, s=float(s), sigma=float(sigma), regime=regime, energy=float(I),
                                       hs_norm=float(norm), ratio=float(ratio))

    logger.debug('weighted maximal integral %s', report)
    return report


class DivergenceProbe:
    """Grid points where ``max_{t ∈ tg} |P^t f(x) - f(x)|`` exceeds a level.

    Attributes:
        points: sorted abscissae of the super-level set.
        level: the level ``λ``.
        t_max: largest time of the probe.
        bound: dimension bound for the probe's ``(a, γ, s)`` (None outside every regime).
        discrepancy: the gridded discrepancy with its argmax times.
    """

    def __init__(self, points: np.ndarray, level: float, t_max: float, bound: float,
                 discrepancy: MaximalResult) -> None:
        self.points = points
        self.level = level
        self.t_max = t_max
        self.bound = bound
        self.discrepancy = discrepancy

    def __str__(self):
        return f'<DivergenceProbe points={self.points.size} level={self.level} bound={self.bound}>'

    def __len__(self):
        return int(self.points.size)


def divergence_probe(fhat: SpectrumFunction, a: float, gamma: float, s: float, lam: float, tg_small: TimeGrid,
                     grid: GridSpec = None, threads: int = None) -> DivergenceProbe:
    """Outer approximation, at scale ``(dx, max tg_small)``, of the set where ``P^t f`` fails to converge to ``f``."""

    if not isinstance(lam, Number) or lam <= 0:
        raise LabInvalidArgumentError('lambda must be > 0')

    if not isinstance(tg_small, TimeGrid):
        raise LabInvalidArgumentError('tg_small must be a TimeGrid')

    grid = grid if grid is not None else fhat.natural_grid()
    f = inverse_transform(fhat, grid).values
    base = EvolutionParams(a, gamma, float(tg_small.samples[0]))

    def evaluate(t):
        return np.abs(propagate(fhat, base.at(t), grid).values - f)

    discrepancy = sup_over_times(evaluate, tg_small.samples, grid, threads=threads)

    try:
        bound = dim_bound_exponent(a, gamma, s)
    except LabUnsupportedRegimeError:
        bound = None

    points = grid.points[discrepancy.values > lam]
    logger.info('divergence probe at level %s: %d of %d points', lam, points.size, grid.n)
    return DivergenceProbe(points, float(lam), float(np.max(tg_small.samples)), bound, discrepancy)


def box_counts(points, scales: Iterable[float]) -> pd.DataFrame:
    """Number of boxes ``[kδ, (k+1)δ)`` meeting the point set, per scale.

    Returns:
        :obj:`pandas.DataFrame` with columns ``delta``, ``boxes``.
    """

    points = np.asarray(points, dtype=float).ravel()
    rows = []
    for delta in scales:
        if delta <= 0:
            raise LabInvalidArgumentError('scales must be > 0')
        boxes = np.unique(np.floor(points / delta + BOX_OFFSET)).size
        rows.append({'delta': float(delta), 'boxes': int(boxes)})
    return pd.DataFrame(rows)


def box_dimension(points, scales: Iterable[float]) -> float:
    """Box-counting dimension: least squares slope of ``log N(δ)`` against ``log(1/δ)``.

    Returns:
        the slope, or ``nan`` for an empty set.
    """

    scales = [float(delta) for delta in scales]
    if len(set(scales)) < 2:
        raise LabInvalidArgumentError('box counting needs at least two distinct scales')

    if np.asarray(points).size == 0:
        return np.nan

    counts = box_counts(points, scales)
    return RegressionReport.fit(-np.log(counts['delta'].values), np.log(counts['boxes'].values)).slope


def frostman_probe(depths: Iterable[int], s: float, ratio: float = 1.0 / 3.0, threads: int = None) -> pd.DataFrame:
    """``s``-energy of the Cantor measures of increasing depth.

    The energies stay bounded for ``s`` below the dimension ``log 2/log(1/ratio)`` and grow without bound above it.

    Returns:
        :obj:`pandas.DataFrame` with columns ``depth``, ``atoms``, ``energy``.
    """

    s = _check_s(s)
    rows = []
    for depth in depths:
        mu = cantor_measure(int(depth), ratio=ratio)
        rows.append({'depth': int(depth), 'atoms': mu.size, 'energy': energy(mu, s, threads=threads)})
    return pd.DataFrame(rows)
