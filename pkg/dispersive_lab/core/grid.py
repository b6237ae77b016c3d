#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

"""Uniform grids, sampled functions and the discrete Fourier pairing.

The Fourier convention of the package is ``f(x) = ∫ f̂(ξ) e^{ixξ} dξ`` and
``f̂(ξ) = (1/2π) ∫ f(x) e^{-ixξ} dx``. Spatial and spectral samples live on
uniform grids ``x_k = x0 + k·dx`` and ``ξ_j = xi0 + j·dξ``; when ``dx·dξ·n = 2π``
both sums are evaluated with a single FFT.
"""

import logging
from numbers import Number
from typing import Any, Callable, Dict

import numpy as np

from ..config import resolve_max_grid
from ..error import LabInvalidArgumentError, LabResolutionError
from ..util import dump_json, load_json

logger = logging.getLogger(__name__)

# product n_x * n_xi evaluated at once by the direct summation
DIRECT_BLOCK = 2 ** 22


class GridSpec:
    """Uniform grid ``x0 + k·dx``, ``k = 0..n-1``.

    Used both for spatial grids and for frequency windows.

    Attributes:
        x0: first point.
        dx: spacing.
        n: number of points.
    """

    def __init__(self, x0: float, dx: float, n: int) -> None:

        if not isinstance(x0, Number) or not np.isfinite(x0):
            raise LabInvalidArgumentError('x0 must be a finite number')

        if not isinstance(dx, Number) or not np.isfinite(dx) or dx <= 0:
            raise LabInvalidArgumentError('dx must be a finite number > 0')

        if not isinstance(n, (int, np.integer)) or n < 1:
            raise LabInvalidArgumentError('n must be an int >= 1')

        self.x0 = float(x0)
        self.dx = float(dx)
        self.n = int(n)

    def __eq__(self, other):
        if not isinstance(other, GridSpec):
            return NotImplemented
        return self.x0 == other.x0 and self.dx == other.dx and self.n == other.n

    def __str__(self):
        return f'<GridSpec x0={self.x0} dx={self.dx} n={self.n}>'

    @classmethod
    def symmetric(cls, L: float, n: int) -> 'GridSpec':
        """Builds a grid of ``n`` points covering ``[-L, L]`` with both ends included.

        Args:
            L: half width of the window.
            n: number of points (powers of two are the fast case).

        Returns:
            the grid.
        """

        if L <= 0:
            raise LabInvalidArgumentError('L must be > 0')

        if n < 2:
            raise LabInvalidArgumentError('a symmetric grid needs at least two points')

        check_size(n)
        return cls(x0=-float(L), dx=2.0 * L / (n - 1), n=n)

    @property
    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def length(self) -> float:
        return self.dx * self.n

    def dual(self) -> 'GridSpec':
        """Returns the grid paired with this one by the FFT (spacing ``2π/(n·dx)``, centered on zero)."""

        step = 2.0 * np.pi / (self.n * self.dx)
        return GridSpec(x0=-(self.n // 2) * step, dx=step, n=self.n)

    def is_dual_of(self, other: 'GridSpec') -> bool:
        """Whether both grids can be paired by a single FFT."""

        return self.n == other.n and abs(self.dx * other.dx * self.n - 2.0 * np.pi) <= 1e-12 * 2.0 * np.pi


def check_size(n: int) -> None:
    """Raises :obj:`dispersive_lab.error.LabResolutionError` when ``n`` exceeds the configured grid cap."""

    cap = resolve_max_grid()
    if n > cap:
        raise LabResolutionError(required=n, available=cap, what='grid size')


class _Sampled:
    """Base of the sampled function types: origin, spacing and finite complex values."""

    def __init__(self, origin: float, step: float, values) -> None:

        values = np.array(values, dtype=complex)

        if values.ndim != 1 or values.size == 0:
            raise LabInvalidArgumentError('values must be a non-empty 1-D sequence')

        if not np.all(np.isfinite(values)):
            raise LabInvalidArgumentError('values must be finite')

        self._spec = GridSpec(x0=origin, dx=step, n=values.size)
        self.values = values
        self.values.setflags(write=False)

    @property
    def grid(self) -> GridSpec:
        return self._spec

    @property
    def n(self) -> int:
        return self._spec.n

    @property
    def points(self) -> np.ndarray:
        return self._spec.points

    def to_dict(self) -> Dict[str, Any]:
        """Builds the JSON document ``{"x0", "dx", "re", "im"}`` of the samples."""

        return {'x0': self._spec.x0, 'dx': self._spec.dx,
                're': self.values.real.tolist(), 'im': self.values.imag.tolist()}

    def save(self, path: str) -> None:
        dump_json(self.to_dict(), path)

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]):
        """Builds the sampled function from a JSON document ``{"x0", "dx", "re", "im"}``.

        ``"xi0"``/``"dxi"`` are accepted as aliases of ``"x0"``/``"dx"``, and ``"im"`` may be omitted for real data.
        """

        if not isinstance(obj, dict):
            raise LabInvalidArgumentError('sampled function documents must be JSON objects')

        origin = obj.get('x0', obj.get('xi0'))
        step = obj.get('dx', obj.get('dxi'))
        re = obj.get('re')

        if origin is None or step is None or re is None:
            raise LabInvalidArgumentError('sampled function documents require x0, dx and re')

        re = np.asarray(re, dtype=float)
        im = np.asarray(obj.get('im', np.zeros_like(re)), dtype=float)

        if re.shape != im.shape:
            raise LabInvalidArgumentError('re and im must have the same length')

        return cls(origin, step, re + 1j * im)

    @classmethod
    def load(cls, path: str):
        return cls.from_dict(load_json(path))


class GridFunction(_Sampled):
    """Complex function sampled on a uniform spatial grid.

    Attributes:
        x0: left endpoint.
        dx: grid spacing.
        values: read-only array of complex samples.
    """

    def __init__(self, x0: float, dx: float, values) -> None:
        super().__init__(x0, dx, values)

    def __str__(self):
        return f'<GridFunction x0={self.x0} dx={self.dx} n={self.n}>'

    @property
    def x0(self) -> float:
        return self._spec.x0

    @property
    def dx(self) -> float:
        return self._spec.dx

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], grid: GridSpec) -> 'GridFunction':
        """Samples ``func`` on the points of ``grid``."""

        return cls(grid.x0, grid.dx, func(grid.points))

    @classmethod
    def on(cls, grid: GridSpec, values) -> 'GridFunction':
        return cls(grid.x0, grid.dx, values)

    def modulus(self) -> np.ndarray:
        return np.abs(self.values)

    def lp_norm(self, p: float = 2.0, mask: np.ndarray = None) -> float:
        """Riemann sum ``(Σ |f|^p dx)^{1/p}``, optionally restricted to a boolean mask (``p = inf`` gives the sup)."""

        values = np.abs(self.values if mask is None else self.values[mask])
        if values.size == 0:
            return 0.0
        if np.isinf(p):
            return float(np.max(values))
        return float((np.sum(values ** p) * self.dx) ** (1.0 / p))


class SpectrumFunction(_Sampled):
    """Complex function sampled on a uniform frequency window, treated as zero outside it.

    Attributes:
        xi0: first frequency.
        dxi: frequency spacing.
        values: read-only array of complex samples.
    """

    def __init__(self, xi0: float, dxi: float, values) -> None:
        super().__init__(xi0, dxi, values)

    def __str__(self):
        return f'<SpectrumFunction xi0={self.xi0} dxi={self.dxi} n={self.n}>'

    @property
    def xi0(self) -> float:
        return self._spec.x0

    @property
    def dxi(self) -> float:
        return self._spec.dx

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], window: GridSpec) -> 'SpectrumFunction':
        """Samples ``func`` on the frequencies of ``window``."""

        check_size(window.n)
        return cls(window.x0, window.dx, func(window.points))

    def natural_grid(self) -> GridSpec:
        """Spatial grid paired with this window by the FFT."""

        return self._spec.dual()

    def with_values(self, values) -> 'SpectrumFunction':
        return SpectrumFunction(self.xi0, self.dxi, values)

    def __add__(self, other: 'SpectrumFunction') -> 'SpectrumFunction':
        if not isinstance(other, SpectrumFunction) or other.grid != self.grid:
            raise LabInvalidArgumentError('spectra must share the same window to be added')
        return self.with_values(self.values + other.values)

    def __mul__(self, scalar: complex) -> 'SpectrumFunction':
        if not isinstance(scalar, Number):
            return NotImplemented
        return self.with_values(self.values * scalar)

    __rmul__ = __mul__


class EvolutionParams:
    """Parameters ``(a, γ, t)`` of the propagator with complex time ``g(t) = t + i t^γ``.

    Attributes:
        a: dispersion order, > 0.
        gamma: dissipation exponent, > 0.
        t: time in (0, 1).
    """

    def __init__(self, a: float, gamma: float, t: float) -> None:

        for name, value in (('a', a), ('gamma', gamma), ('t', t)):
            if not isinstance(value, Number) or isinstance(value, bool) or not np.isfinite(value):
                raise LabInvalidArgumentError(f'{name} must be a finite number')

        if a <= 0:
            raise LabInvalidArgumentError('a must be > 0')

        if gamma <= 0:
            raise LabInvalidArgumentError('gamma must be > 0')

        if not 0 < t < 1:
            raise LabInvalidArgumentError(f't must be in (0, 1), got {t}')

        self.a = float(a)
        self.gamma = float(gamma)
        self.t = float(t)

    def __eq__(self, other):
        if not isinstance(other, EvolutionParams):
            return NotImplemented
        return (self.a, self.gamma, self.t) == (other.a, other.gamma, other.t)

    def __str__(self):
        return f'<EvolutionParams a={self.a} gamma={self.gamma} t={self.t}>'

    @property
    def complex_time(self) -> complex:
        return complex(self.t, self.t ** self.gamma)

    def at(self, t: float) -> 'EvolutionParams':
        return EvolutionParams(self.a, self.gamma, t)


def forward_transform(f: GridFunction) -> SpectrumFunction:
    """Discrete approximation of ``f̂(ξ) = (1/2π) ∫ f(x) e^{-ixξ} dx`` on the dual window of ``f``'s grid.

    Args:
        f: sampled function.

    Returns:
        spectrum on the window ``-(n//2)·dξ + j·dξ`` with ``dξ = 2π/(n·dx)``.
    """

    if not isinstance(f, GridFunction):
        raise LabInvalidArgumentError('f must be a GridFunction')

    window = f.grid.dual()
    k = np.arange(f.n)
    pre = f.values * np.exp(-1j * k * f.dx * window.x0)
    fhat = f.dx / (2.0 * np.pi) * np.exp(-1j * f.x0 * window.points) * np.fft.fft(pre)
    return SpectrumFunction(window.x0, window.dx, fhat)


def inverse_transform(g: SpectrumFunction, grid: GridSpec = None) -> GridFunction:
    """Evaluates ``f(x) = ∫ g(ξ) e^{ixξ} dξ`` on a spatial grid.

    When ``grid`` is omitted the natural grid of ``g`` is used. Grids that are paired with the
    window of ``g`` by the FFT are evaluated in O(n log n); any other grid falls back to the
    direct sum (see :obj:`dispersive_lab.core.grid.synthesize`).

    Args:
        g: sampled spectrum.
        grid: spatial grid.

    Returns:
        the sampled function.
    """

    if not isinstance(g, SpectrumFunction):
        raise LabInvalidArgumentError('g must be a SpectrumFunction')

    grid = g.natural_grid() if grid is None else grid

    if not grid.is_dual_of(g.grid):
        logger.debug('grid %s is not paired with %s, using direct summation', grid, g.grid)
        return GridFunction.on(grid, synthesize(g, grid.points))

    j = np.arange(g.n)
    post = g.values * np.exp(1j * grid.x0 * j * g.dxi)
    values = g.dxi * g.n * np.fft.ifft(post) * np.exp(1j * grid.points * g.xi0)
    return GridFunction.on(grid, values)


def synthesize(g: SpectrumFunction, xs: np.ndarray, weights: np.ndarray = None) -> np.ndarray:
    """Direct evaluation of ``Σ_j g_j w_j e^{i x ξ_j} dξ`` at arbitrary points.

    Only the nonzero samples of ``g`` take part; points are processed in blocks of bounded size,
    in increasing order.

    Args:
        g: sampled spectrum.
        xs: evaluation points.
        weights: optional extra factor per frequency sample (a multiplier).

    Returns:
        complex array of values at ``xs``.
    """

    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    amplitude = g.values if weights is None else g.values * weights
    support = amplitude != 0
    xi = g.points[support]
    amplitude = amplitude[support] * g.dxi

    out = np.zeros(xs.size, dtype=complex)
    if xi.size == 0:
        return out

    block = max(1, DIRECT_BLOCK // xi.size)
    for start in range(0, xs.size, block):
        chunk = xs[start:start + block]
        out[start:start + block] = np.exp(1j * np.outer(chunk, xi)) @ amplitude
    return out


def sobolev_norm(g: SpectrumFunction, s: float) -> float:
    """Sobolev norm ``(Σ (1+ξ²)^s |g(ξ)|² dξ)^{1/2}`` of a sampled spectrum.

    Args:
        g: sampled spectrum.
        s: regularity index (negative values allowed).

    Returns:
        the norm.
    """

    if not isinstance(g, SpectrumFunction):
        raise LabInvalidArgumentError('g must be a SpectrumFunction')

    if not isinstance(s, Number) or not np.isfinite(s):
        raise LabInvalidArgumentError('s must be a finite number')

    weight = (1.0 + g.points ** 2) ** s
    return float(np.sqrt(np.sum(weight * np.abs(g.values) ** 2) * g.dxi))
