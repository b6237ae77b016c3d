#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import enum
import logging
from numbers import Number
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..error import LabInvalidArgumentError
from ..util import ordered_map
from .grid import (EvolutionParams, GridFunction, GridSpec, SpectrumFunction,
                   inverse_transform, sobolev_norm)
from .propagator import (apply_multiplier, complex_semigroup_propagate,
                         dissipative_propagate, generator_propagate, propagate)

logger = logging.getLogger(__name__)

# above this size the Hardy–Littlewood sup runs over a geometric set of radii
FULL_RADII_LIMIT = 8192
RADII_GROWTH = 1.02
RATIO_FLOOR = 1e-300
RELATIVE_FLOOR = 1e-12


class TimeGrid:
    """Finite set of times replacing ``sup_{0<t<1}``.

    Attributes:
        samples: strictly increasing array of times in (0, 1).
    """

    def __init__(self, samples: Iterable[float]) -> None:

        samples = np.array(list(samples) if not isinstance(samples, np.ndarray) else samples, dtype=float).ravel()

        if samples.size == 0:
            raise LabInvalidArgumentError('a time grid needs at least one sample')

        if not np.all((samples > 0) & (samples < 1)):
            raise LabInvalidArgumentError('time samples must lie in (0, 1)')

        if np.any(np.diff(samples) <= 0):
            raise LabInvalidArgumentError('time samples must be strictly increasing')

        self.samples = samples
        self.samples.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, TimeGrid):
            return NotImplemented
        return np.array_equal(self.samples, other.samples)

    def __str__(self):
        return f'<TimeGrid size={len(self)} min={self.samples[0]:.3e} max={self.samples[-1]:.3e}>'

    def __len__(self):
        return int(self.samples.size)

    def __iter__(self):
        return iter(self.samples.tolist())

    @classmethod
    def geometric(cls, K: int = 20, per_octave: int = 1, t_max: float = 0.5) -> 'TimeGrid':
        """Times ``t_max·2^{-j/per_octave}``, ``j = 0..K·per_octave - 1``; the default is ``2^{-k}``, ``k = 1..K``."""

        if K < 1 or per_octave < 1:
            raise LabInvalidArgumentError('K and per_octave must be >= 1')

        exponents = np.arange(K * per_octave) / per_octave
        return cls(np.sort(t_max * 2.0 ** -exponents))

    @classmethod
    def from_times(cls, times: Iterable[float]) -> 'TimeGrid':
        """Sorts and deduplicates the given times, dropping those outside (0, 1)."""

        times = np.unique(np.asarray(list(times), dtype=float))
        return cls(times[(times > 0) & (times < 1)])

    @classmethod
    def designated(cls, xs: Iterable[float], nu: float, a: float) -> 'TimeGrid':
        """Times ``t = x ν^{2(a-1)}/a`` at which the linear phase of the scale ``ν`` counterexample cancels at ``x``."""

        if not 0 < a < 1 or not 0 < nu < 1:
            raise LabInvalidArgumentError('designated times need 0 < a < 1 and 0 < nu < 1')
        return cls.from_times(np.asarray(list(xs), dtype=float) * nu ** (2.0 * (a - 1.0)) / a)

    def refine(self) -> 'TimeGrid':
        """Inserts the geometric midpoint between consecutive samples."""

        if len(self) == 1:
            return self
        middles = np.sqrt(self.samples[1:] * self.samples[:-1])
        return TimeGrid(np.sort(np.concatenate((self.samples, middles))))

    def merge(self, other: 'TimeGrid') -> 'TimeGrid':
        return TimeGrid(np.union1d(self.samples, other.samples))


class MaximalResult:
    """Gridded maximal function and the time realizing it at every point.

    Attributes:
        maximal: :obj:`dispersive_lab.core.grid.GridFunction` with ``max_t |P^t f|``.
        argmax: time of the first sample realizing the maximum at every grid point.
    """

    def __init__(self, maximal: GridFunction, argmax: np.ndarray) -> None:
        self.maximal = maximal
        self.argmax = argmax

    def __str__(self):
        return f'<MaximalResult n={self.maximal.n} sup={self.sup:.6g}>'

    @property
    def values(self) -> np.ndarray:
        return self.maximal.values.real

    @property
    def sup(self) -> float:
        return float(np.max(self.values))


def sup_over_times(evaluate, times: Sequence[float], grid: GridSpec, threads: int = None) -> MaximalResult:
    best = np.full(grid.n, -np.inf)
    argmax = np.zeros(grid.n)
    batch = 16

    for start in range(0, len(times), batch):
        chunk = list(times[start:start + batch])
        moduli = ordered_map(evaluate, chunk, threads=threads)
        # fixed time order keeps ties deterministic
        for t, modulus in zip(chunk, moduli):
            larger = modulus > best
            best = np.where(larger, modulus, best)
            argmax = np.where(larger, t, argmax)

    return MaximalResult(GridFunction.on(grid, best), argmax)


def maximal_function(fhat: SpectrumFunction, a: float, gamma: float, tg: TimeGrid, grid: GridSpec = None,
                     threads: int = None) -> MaximalResult:
    """Gridded maximal function ``max_{t ∈ tg} |P^t_{a,γ} f(x)|`` with its argmax time map.

    Args:
        fhat: spectrum of the datum.
        a: dispersion order.
        gamma: dissipation exponent.
        tg: time grid.
        grid: spatial grid; the natural grid of ``fhat`` when omitted.
        threads: maximum number of worker threads.

    Returns:
        a :obj:`dispersive_lab.core.maximal.MaximalResult`.
    """

    if not isinstance(tg, TimeGrid):
        raise LabInvalidArgumentError('tg must be a TimeGrid')

    grid = grid if grid is not None else fhat.natural_grid()
    base = EvolutionParams(a, gamma, float(tg.samples[0]))

    def evaluate(t):
        return propagate(fhat, base.at(t), grid).modulus()

    logger.debug('maximal function over %s on %s', tg, grid)
    return sup_over_times(evaluate, tg.samples, grid, threads=threads)


def undamped_comparison(fhat: SpectrumFunction, a: float, gamma: float, tg: TimeGrid, grid: GridSpec = None,
                        threads: int = None) -> Dict[str, float]:
    """L² norms of the gridded maximal functions with and without the damping ``e^{-t^γ|ξ|^a}``."""

    grid = grid if grid is not None else fhat.natural_grid()
    r = np.abs(fhat.points) ** a

    def undamped(t):
        return apply_multiplier(fhat, np.exp(1j * t * r), grid, what='undamped_comparison').modulus()

    damped = maximal_function(fhat, a, gamma, tg, grid, threads=threads).maximal
    free = sup_over_times(undamped, tg.samples, grid, threads=threads).maximal
    return {'damped': damped.lp_norm(2), 'undamped': free.lp_norm(2)}


def hardy_littlewood(f: GridFunction, radii: Iterable[int] = None) -> GridFunction:
    """Discrete centered Hardy–Littlewood maximal function.

    ``ℳf(x_i) = max_r (2r+1)^{-1} Σ_{|j-i| <= r} |f_j|`` with ``f = 0`` off the grid. All integer
    radii are used for grids up to 8192 points; larger grids use a geometric set of radii.

    Args:
        f: sampled function.
        radii: radii in grid units (0 is always included).

    Returns:
        real nonnegative sampled function on the same grid.
    """

    magnitude = np.abs(f.values)
    n = magnitude.size

    if radii is None:
        if n <= FULL_RADII_LIMIT:
            radii = np.arange(1, n)
        else:
            radii = np.unique(np.floor(RADII_GROWTH ** np.arange(int(np.log(n) / np.log(RADII_GROWTH)) + 1)))
    radii = np.asarray(sorted(set(int(r) for r in radii if r > 0)), dtype=int)

    cumulative = np.concatenate(([0.0], np.cumsum(magnitude)))
    index = np.arange(n)
    best = magnitude.copy()

    for r in radii:
        lo = np.clip(index - r, 0, n)
        hi = np.clip(index + r + 1, 0, n)
        np.maximum(best, (cumulative[hi] - cumulative[lo]) / (2 * r + 1), out=best)

    return GridFunction.on(f.grid, best)


class SemigroupKind(enum.Enum):
    """Semigroup terms dominated by the Hardy–Littlewood maximal function.
    """
    dissipative = 0
    generator = 1
    complex_time = 2

    @classmethod
    def from_string(cls, _str: str) -> 'SemigroupKind':
        name = _str.replace('-', '_')
        if name not in [e.name for e in cls]:
            raise LabInvalidArgumentError(f'unknown semigroup kind {_str}')
        return cls[name]

    @classmethod
    def all(cls) -> List[str]:
        return [e.name for e in cls]


_SEMIGROUPS = {
    SemigroupKind.dissipative: dissipative_propagate,
    SemigroupKind.generator: generator_propagate,
    SemigroupKind.complex_time: complex_semigroup_propagate,
}


def domination_check(fhat: SpectrumFunction, a: float, t_list: Iterable[float], grid: GridSpec = None,
                     kinds: Iterable[SemigroupKind] = (SemigroupKind.dissipative,)) -> float:
    """``sup_{x,t} Σ_kinds |S_t f(x)| / ℳf(x)`` over the points where ``ℳf`` is not negligible.

    Args:
        fhat: spectrum of the datum.
        a: order of the semigroups.
        t_list: times.
        grid: spatial grid; the natural grid of ``fhat`` when omitted.
        kinds: semigroup terms added in the numerator.

    Returns:
        the sampled ratio sup (0 for the zero function).
    """

    grid = grid if grid is not None else fhat.natural_grid()
    f = inverse_transform(fhat, grid)
    hl = hardy_littlewood(f).values.real
    peak = hl.max()

    if peak == 0:
        return 0.0

    mask = hl > RELATIVE_FLOOR * peak
    denominator = np.maximum(hl[mask], RATIO_FLOOR)
    sup = 0.0

    for t in t_list:
        numerator = np.zeros(grid.n)
        for kind in kinds:
            numerator += _SEMIGROUPS[kind](fhat, t, a, grid).modulus()
        sup = max(sup, float(np.max(numerator[mask] / denominator)))

    return sup


def level_set_measure(g: GridFunction, lam: float) -> float:
    """Measure ``dx·#{x_i : |g(x_i)| > λ}`` of the discrete super-level set, ``λ > 0``."""

    if not isinstance(lam, Number) or lam <= 0:
        raise LabInvalidArgumentError('lambda must be > 0')

    return float(np.count_nonzero(np.abs(g.values) > lam) * g.dx)


def weak_type_scan(fhat: SpectrumFunction, a: float, gamma: float, tg: TimeGrid, lambdas: Iterable[float],
                   grid: GridSpec = None, threads: int = None) -> pd.DataFrame:
    """Weak (1,1) quotients ``λ |{P*f > λ}| / ‖f‖_{L¹}`` over a sweep of levels.

    Returns:
        :obj:`pandas.DataFrame` with columns ``lambda``, ``measure``, ``ratio``.
    """

    grid = grid if grid is not None else fhat.natural_grid()
    maximal = maximal_function(fhat, a, gamma, tg, grid, threads=threads).maximal
    mass = inverse_transform(fhat, grid).lp_norm(1)

    rows = []
    for lam in lambdas:
        measure = level_set_measure(maximal, lam)
        rows.append({'lambda': float(lam), 'measure': measure, 'ratio': lam * measure / mass if mass > 0 else 0.0})
    return pd.DataFrame(rows)


class ScanDomain(enum.Enum):
    """Spatial domain of the strong type scans: the unit ball or the whole sampled line.
    """
    local = 0
    full = 1

    @classmethod
    def from_string(cls, _str: str) -> 'ScanDomain':
        if _str == 'global':
            return cls.full
        if _str not in [e.name for e in cls]:
            raise LabInvalidArgumentError(f'unknown scan domain {_str}, available: local, global')
        return cls[_str]

    @classmethod
    def all(cls) -> List[str]:
        return ['local', 'global']


Family = Union[Dict[str, SpectrumFunction], Sequence[Tuple[str, SpectrumFunction]]]


def _members(family: Family) -> List[Tuple[str, SpectrumFunction]]:
    members = list(family.items()) if isinstance(family, dict) else list(family)
    if not members:
        raise LabInvalidArgumentError('the test family is empty')
    return members


def strong_ratio_scan(family: Family, a: float, gamma: float, s: float, tg: TimeGrid,
                      domain: ScanDomain = ScanDomain.local, threads: int = None) -> pd.DataFrame:
    """Ratios ``‖P*f‖_{L²(domain)} / ‖f‖_{H^s}`` over a family of spectra, each on its natural grid.

    Args:
        family: labelled spectra.
        a: dispersion order.
        gamma: dissipation exponent.
        s: Sobolev index of the denominator.
        tg: time grid.
        domain: ``local`` restricts the numerator to ``|x| < 1``.
        threads: maximum number of worker threads.

    Returns:
        :obj:`pandas.DataFrame` with columns ``label``, ``numerator``, ``denominator``, ``ratio``.
    """

    rows = []
    for label, fhat in _members(family):
        maximal = maximal_function(fhat, a, gamma, tg, threads=threads).maximal
        mask = np.abs(maximal.points) < 1 if domain is ScanDomain.local else None
        numerator = maximal.lp_norm(2, mask=mask)
        denominator = sobolev_norm(fhat, s)
        rows.append({'label': label, 'numerator': numerator, 'denominator': denominator,
                     'ratio': numerator / denominator if denominator > 0 else 0.0})
        logger.debug('strong ratio %s: %s', label, rows[-1])
    return pd.DataFrame(rows)


def lp_ratio_scan(family: Family, a: float, gamma: float, p: float, tg: TimeGrid,
                  threads: int = None) -> pd.DataFrame:
    """Ratios ``‖P*f‖_{L^p} / ‖f‖_{L^p}`` over a family of spectra (the ``L^p`` bound for ``γ <= 1``).

    Returns:
        :obj:`pandas.DataFrame` with columns ``label``, ``numerator``, ``denominator``, ``ratio``.
    """

    if not isinstance(p, Number) or p < 1:
        raise LabInvalidArgumentError('p must be >= 1')

    rows = []
    for label, fhat in _members(family):
        maximal = maximal_function(fhat, a, gamma, tg, threads=threads).maximal
        numerator = maximal.lp_norm(p)
        denominator = inverse_transform(fhat).lp_norm(p)
        rows.append({'label': label, 'numerator': numerator, 'denominator': denominator,
                     'ratio': numerator / denominator if denominator > 0 else 0.0})
    return pd.DataFrame(rows)


def convergence_profile(fhat: SpectrumFunction, a: float, gamma: float, ks: Iterable[int] = range(1, 21),
                        grid: GridSpec = None) -> pd.DataFrame:
    """Uniform errors ``‖P^t f - f‖_∞`` along ``t = 2^{-k}``.

    Returns:
        :obj:`pandas.DataFrame` with columns ``k``, ``t``, ``sup_error``.
    """

    grid = grid if grid is not None else fhat.natural_grid()
    f = inverse_transform(fhat, grid).values
    rows = []
    for k in ks:
        t = 2.0 ** -k
        evolved = propagate(fhat, EvolutionParams(a, gamma, t), grid).values
        rows.append({'k': int(k), 't': t, 'sup_error': float(np.max(np.abs(evolved - f)))})
    return pd.DataFrame(rows)
