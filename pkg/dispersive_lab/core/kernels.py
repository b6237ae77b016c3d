#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

"""Convolution kernels of the semigroups and of the dyadic oscillatory pieces, and their majorants.

Kernels of radial multipliers ``h(|ξ|)`` with ``h`` analytic in the right half plane are
computed as ``∫_R h(|ξ|) e^{ixξ} dξ = I(x) + I(-x)`` with ``I(y) = ∫_0^∞ h(ξ) e^{iyξ} dξ``,
each half line integral being moved onto a rotated ray where it converges absolutely.
Integrands that contain the compactly supported cutoffs are not analytic and are
integrated on the real line with phase-bounded panels.
"""

import enum
import logging
from numbers import Number
from typing import Any, Callable, Dict, List

import numpy as np
import pandas as pd
from scipy import special

from ..config import resolve_max_grid
from ..error import (LabInvalidArgumentError, LabResolutionError,
                     LabUnsupportedRegimeError)
from ..util import (RegressionReport, damping_length, half_line_fourier,
                    ordered_map, panel_quad, phase_panels)
from .cutoffs import CutoffFamily, dyadic_scales
from .grid import GridSpec, SpectrumFunction, inverse_transform

logger = logging.getLogger(__name__)

DECAY_EXPONENT = 40.0
CRITICAL_KAPPAS = (0.25, 0.5, 1.0, 2.0, 4.0)
L1_MIN_POINTS = 4096


class KernelCheck(enum.Enum):
    """Kernel bounds that can be checked by sampling.
    """
    poisson = 0
    heat = 1
    bessel = 2
    lambda_sum = 3
    oscillatory_local = 4

    @classmethod
    def from_string(cls, _str: str) -> 'KernelCheck':
        """Builds the :obj:`dispersive_lab.core.kernels.KernelCheck` from a :obj:`str` (``-`` and ``_`` are interchangeable).

        Raises:
            LabInvalidArgumentError: if the name is unknown.
        """

        name = _str.replace('-', '_')
        if name == 'lambda':
            name = 'lambda_sum'
        if name not in [e.name for e in cls]:
            raise LabInvalidArgumentError(f'unknown kernel check {_str}, available: {", ".join(cls.all())}')
        return cls[name]

    @classmethod
    def all(cls) -> List[str]:
        return [e.name.replace('_', '-') if e is not cls.lambda_sum else 'lambda' for e in cls]


class OscillatoryKernelParams:
    """Parameters of the high frequency oscillatory kernel.

    Attributes:
        t1: first time, in (0, 1).
        t2: second time, in (0, 1).
        alpha: regularity gain, in (0, 1).
        a: dispersion order, > 0.
        gamma: dissipation exponent, > 0.
        N: dyadic frequency cap.
    """

    def __init__(self, t1: float, t2: float, alpha: float, a: float, gamma: float, N: int = 1024) -> None:

        for name, value in (('t1', t1), ('t2', t2), ('alpha', alpha)):
            if not isinstance(value, Number) or not 0 < value < 1:
                raise LabInvalidArgumentError(f'{name} must be in (0, 1), got {value}')

        if not isinstance(a, Number) or a <= 0:
            raise LabInvalidArgumentError('a must be > 0')

        if not isinstance(gamma, Number) or gamma <= 0:
            raise LabInvalidArgumentError('gamma must be > 0')

        dyadic_scales(N)

        self.t1 = float(t1)
        self.t2 = float(t2)
        self.alpha = float(alpha)
        self.a = float(a)
        self.gamma = float(gamma)
        self.N = int(N)

    def __eq__(self, other):
        if not isinstance(other, OscillatoryKernelParams):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __str__(self):
        return ' '.join([f'{k}={v}' for k, v in self.to_dict().items()])

    @property
    def t(self) -> float:
        return self.t1 - self.t2

    @property
    def eps(self) -> float:
        return self.t1 ** self.gamma + self.t2 ** self.gamma

    def with_times(self, t1: float, t2: float) -> 'OscillatoryKernelParams':
        return OscillatoryKernelParams(t1, t2, self.alpha, self.a, self.gamma, self.N)

    def with_alpha(self, alpha: float) -> 'OscillatoryKernelParams':
        return OscillatoryKernelParams(self.t1, self.t2, alpha, self.a, self.gamma, self.N)

    @staticmethod
    def from_dict(obj: Any) -> 'OscillatoryKernelParams':
        return OscillatoryKernelParams(t1=float(obj['t1']), t2=float(obj['t2']), alpha=float(obj['alpha']),
                                       a=float(obj['a']), gamma=float(obj['gamma']), N=int(obj.get('N', 1024)))

    def to_dict(self) -> Dict[str, Any]:
        return {'t1': self.t1, 't2': self.t2, 'alpha': self.alpha, 'a': self.a, 'gamma': self.gamma, 'N': self.N}


def _check_positive(name: str, value: float) -> float:
    if not isinstance(value, Number) or not np.isfinite(value) or value <= 0:
        raise LabInvalidArgumentError(f'{name} must be a finite number > 0, got {value}')
    return float(value)


def _rotation(c: complex, a: float) -> float:
    # keeps |arg(c) ± aθ| <= (π/2 + |arg c|)/2 < π/2, so e^{-cξ^a} decays on both rays
    beta = abs(np.angle(c))
    return min(np.pi / 2, (np.pi / 2 - beta) / (2 * a))


def _radial_kernel(x: float, amplitude: Callable[[np.ndarray], np.ndarray], c: complex, a: float) -> complex:
    """``∫_R A(|ξ|) e^{-c|ξ|^a} e^{ixξ} dξ`` for an amplitude ``A`` analytic in the right half plane."""

    theta = _rotation(c, a)

    def half(y):
        phi = 0.0 if y == 0 else np.copysign(theta, y)
        c_ray = c * np.exp(1j * a * phi)
        u_max = damping_length(c_ray, a, exponent=DECAY_EXPONENT)
        if y != 0:
            u_max = min(u_max, DECAY_EXPONENT / (abs(y) * np.sin(theta)))
        spin = a * abs(c_ray.imag)

        def h(xi):
            return amplitude(xi) * np.exp(-c * xi ** a)

        def rate(u):
            return spin * u ** (a - 1.0)

        return half_line_fourier(h, y, theta, u_max, rate)

    return half(x) + half(-x)


def _unit(xi):
    return np.ones_like(xi)


def poisson_kernel(x: float, t: float, a: float) -> complex:
    """Kernel ``L(x, t, a) = ∫ e^{-(1+i)t|ξ|^a} e^{ixξ} dξ`` of ``e^{-(1+i)t(-Δ)^{a/2}}``.

    Args:
        x: position.
        t: time, > 0.
        a: order, > 0.

    Returns:
        the kernel value.
    """

    t, a = _check_positive('t', t), _check_positive('a', a)
    return _radial_kernel(float(x), _unit, (1 + 1j) * t, a)


def _bound(x: float, t: float, a: float) -> float:
    return t / (t ** (2.0 / a) + x ** 2) ** ((1.0 + a) / 2.0)


def poisson_bound_ratio(x: float, t: float, a: float) -> float:
    """``|L(x,t,a)| (t^{2/a} + x²)^{(1+a)/2} / t``, bounded by a constant depending on ``a``."""

    return abs(poisson_kernel(x, t, a)) / _bound(x, t, a)


def fractional_heat_kernel(x: float, t: float, a: float, weighted: bool = False) -> complex:
    """Kernel of ``e^{-t(-Δ)^{a/2}}`` or, when ``weighted``, of ``t(-Δ)^{a/2} e^{-t(-Δ)^{a/2}}``.

    Args:
        x: position.
        t: time, > 0.
        a: order, > 0.
        weighted: whether the generator weighted kernel is computed.

    Returns:
        the kernel value (real up to rounding).
    """

    t, a = _check_positive('t', t), _check_positive('a', a)

    if weighted:
        def amplitude(xi):
            return t * xi ** a
    else:
        amplitude = _unit

    return _radial_kernel(float(x), amplitude, complex(t), a)


def heat_bound_ratio(x: float, t: float, a: float) -> float:
    """``(|P| + |P̃|)(x,t,a) (t^{2/a} + x²)^{(1+a)/2} / t`` for the heat kernel and its weighted variant."""

    value = abs(fractional_heat_kernel(x, t, a)) + abs(fractional_heat_kernel(x, t, a, weighted=True))
    return value / _bound(x, t, a)


def bessel_kernel(x: float, sigma: float) -> complex:
    """``∫ e^{ixξ} (1+ξ²)^{-σ/2} dξ`` by quadrature on rotated rays, ``x ≠ 0``."""

    if not isinstance(sigma, Number) or not 0 < sigma < 1:
        raise LabInvalidArgumentError(f'sigma must be in (0, 1), got {sigma}')

    if x == 0:
        raise LabInvalidArgumentError('the Bessel kernel is singular at x = 0')

    theta = np.pi / 4
    x = float(x)

    def h(xi):
        return (1.0 + xi ** 2) ** (-sigma / 2.0)

    def rate(u):
        return np.full_like(u, sigma)

    u_max = DECAY_EXPONENT / (abs(x) * np.sin(theta))
    return half_line_fourier(h, x, theta, u_max, rate) + half_line_fourier(h, -x, theta, u_max, rate)


def bessel_potential(x, sigma: float) -> np.ndarray:
    """Closed form of :obj:`bessel_kernel`: ``2√π/Γ(σ/2) (|x|/2)^{ν} K_ν(|x|)`` with ``ν = (σ-1)/2``."""

    r = np.abs(np.asarray(x, dtype=float))
    nu = (sigma - 1.0) / 2.0
    return 2.0 * np.sqrt(np.pi) / special.gamma(sigma / 2.0) * (r / 2.0) ** nu * special.kv(nu, r)


def bessel_kernel_check(x: float, sigma: float) -> float:
    """``|B(x)| |x|^{1-σ}`` for the Bessel kernel ``B`` of order ``σ``; bounded on ``0 < |x| <= 1``."""

    return abs(bessel_kernel(x, sigma)) * abs(x) ** (1.0 - sigma)


def _g_M(xi: np.ndarray, prm: OscillatoryKernelParams, cutoffs: CutoffFamily, M: float) -> np.ndarray:
    r = np.abs(xi)
    return (np.exp(-prm.eps * r ** prm.a) * (1.0 + r ** 2) ** (-prm.alpha / 2.0)
            * cutoffs.eta(r / M) * cutoffs.mu(r / prm.N))


def _even_oscillatory(x: float, prm: OscillatoryKernelParams, lo: float, hi: float,
                      amplitude: Callable[[np.ndarray], np.ndarray]) -> complex:
    # 2 ∫_lo^hi e^{itξ^a} A(ξ) cos(xξ) dξ for an even amplitude
    t, a = prm.t, prm.a

    def rate(xi):
        return abs(x) + a * abs(t) * xi ** (a - 1.0)

    def width(xi):
        return np.maximum(xi, 1.0) / 32.0

    def integrand(xi):
        return 2.0 * np.exp(1j * t * xi ** a) * amplitude(xi) * np.cos(x * xi)

    return panel_quad(integrand, phase_panels(lo, hi, rate, max_width=width))


def lambda_M(x: float, prm: OscillatoryKernelParams, M: float, cutoffs: CutoffFamily = None) -> complex:
    """Dyadic piece ``Λ_M(x) = ∫ e^{it|ξ|^a} e^{-ixξ} g_M(ξ) dξ`` with
    ``g_M(ξ) = e^{-ε|ξ|^a} (1+ξ²)^{-α/2} η(ξ/M) μ(ξ/N)``.

    Args:
        x: position.
        prm: kernel parameters.
        M: dyadic scale, >= 1.
        cutoffs: cutoff family.

    Returns:
        the kernel piece.
    """

    cutoffs = cutoffs if cutoffs is not None else CutoffFamily()
    dyadic_scales(int(M))

    hi = min(4.0 * M, float(prm.N))
    if hi <= M:
        return 0j

    return _even_oscillatory(float(x), prm, float(M), hi, lambda xi: _g_M(xi, prm, cutoffs, M))


def oscillatory_kernel(x: float, prm: OscillatoryKernelParams, cutoffs: CutoffFamily = None) -> complex:
    """Full high frequency kernel
    ``∫ e^{i(t1-t2)|ξ|^a} e^{-ixξ} e^{-(t1^γ+t2^γ)|ξ|^a} (1+ξ²)^{-α/2} (1-χ(ξ)) μ(ξ/N) dξ``.
    """

    cutoffs = cutoffs if cutoffs is not None else CutoffFamily()

    def amplitude(xi):
        return (np.exp(-prm.eps * xi ** prm.a) * (1.0 + xi ** 2) ** (-prm.alpha / 2.0)
                * (1.0 - cutoffs.chi(xi)) * cutoffs.mu(xi / prm.N))

    return _even_oscillatory(float(x), prm, cutoffs.chi_plateau, float(prm.N), amplitude)


def lambda_l1_norm(prm: OscillatoryKernelParams, M: float, cutoffs: CutoffFamily = None) -> float:
    """``‖Λ_M‖_{L¹}`` computed from FFT samples of ``Λ_M`` on a grid that holds its mass.

    The spatial window covers the stationary region ``|x| <= a|t| max(M,4M)^{a-1}`` twice, plus
    ``256/M`` for the smooth tails; the frequency window is ``[-16M, 16M]``.
    """

    cutoffs = cutoffs if cutoffs is not None else CutoffFamily()
    a, t = prm.a, prm.t

    reach = a * abs(t) * max(M ** (a - 1.0), (4.0 * M) ** (a - 1.0))
    half_width = 2.0 * reach + 256.0 / M
    dxi = np.pi / half_width
    n = max(L1_MIN_POINTS, int(2 ** np.ceil(np.log2(32.0 * M / dxi))))

    cap = resolve_max_grid()
    if n > cap:
        raise LabResolutionError(required=n, available=cap, what=f'L1 norm of the dyadic piece M={M}')

    window = GridSpec(x0=-(n // 2) * dxi, dx=dxi, n=n)
    xi = window.points
    samples = np.exp(1j * t * np.abs(xi) ** a) * _g_M(xi, prm, cutoffs, M)

    # Λ_M(-x) on the natural grid; the L1 norm is reflection invariant
    values = inverse_transform(SpectrumFunction(window.x0, window.dx, samples))
    return float(np.sum(np.abs(values.values)) * values.dx)


def summability_exponent(a: float, gamma: float, alpha: float) -> float:
    """Predicted log-slope of ``‖Λ_M‖_{L¹}`` in ``M``: ``(a/2)(1-1/γ)₊ - α`` for ``a < 1`` and ``(1-1/γ)₊ - α`` for ``a = 1``."""

    loss = max(0.0, 1.0 - 1.0 / gamma)
    if a < 1:
        return a / 2.0 * loss - alpha
    elif a == 1:
        return loss - alpha
    raise LabUnsupportedRegimeError('summability exponent', a=a, gamma=gamma, alpha=alpha)


def lambda_l1_partial_sums(prm: OscillatoryKernelParams, cutoffs: CutoffFamily = None, M_max: int = 1024,
                           critical_times: bool = True, threads: int = None) -> pd.DataFrame:
    """Terms ``‖Λ_M‖_{L¹}`` and partial sums for ``M = 1, 2, 4, .., M_max``.

    When ``critical_times`` is set, every term is the largest norm over the given times and the
    critical family ``t1 = κ M^{-a/γ}``, ``t2 = t1/2``, ``κ ∈ {1/4, 1/2, 1, 2, 4}`` (times kept in (0, 1)),
    which keeps the damping ``e^{-ε|ξ|^a}`` of order one on the band of ``Λ_M`` at every scale.

    Scales ``M >= N`` are left out: ``μ(ξ/N)`` vanishes on their band. Scales whose band reaches the
    transition of ``μ`` (``4M > N/2``) are kept in the sums and flagged in ``capped``.

    Args:
        prm: kernel parameters.
        cutoffs: cutoff family.
        M_max: largest dyadic scale.
        critical_times: whether to maximize over the critical time family.
        threads: maximum number of worker threads.

    Returns:
        :obj:`pandas.DataFrame` with columns ``M``, ``term``, ``partial_sum``, ``t1``, ``t2``, ``capped``.
    """

    cutoffs = cutoffs if cutoffs is not None else CutoffFamily()
    scales = dyadic_scales(M_max)

    dropped = scales[scales * cutoffs.chi_plateau >= prm.N * cutoffs.mu_support]
    if dropped.size:
        logger.info('dropping scales %s: the cap N=%s removes their band', dropped.tolist(), prm.N)
    scales = scales[scales * cutoffs.chi_plateau < prm.N * cutoffs.mu_support]

    def candidates(M):
        times = [(prm.t1, prm.t2)]
        if critical_times:
            for kappa in CRITICAL_KAPPAS:
                t1 = kappa * M ** (-prm.a / prm.gamma)
                if t1 < 1:
                    times.append((t1, t1 / 2.0))
        return times

    jobs = [(M, t1, t2) for M in scales for t1, t2 in candidates(M)]
    norms = ordered_map(lambda job: lambda_l1_norm(prm.with_times(job[1], job[2]), job[0], cutoffs), jobs,
                        threads=threads)

    best = {}
    for (M, t1, t2), value in zip(jobs, norms):
        if M not in best or value > best[M][0]:
            best[M] = (value, t1, t2)

    terms = np.array([best[M][0] for M in scales])
    logger.debug('dyadic L1 terms for %s: %s', prm, terms)
    return pd.DataFrame({'M': scales, 'term': terms, 'partial_sum': np.cumsum(terms),
                         't1': [best[M][1] for M in scales], 't2': [best[M][2] for M in scales],
                         'capped': 2.0 * cutoffs.chi_support * scales > prm.N * cutoffs.mu_plateau})


def term_slope(terms: pd.DataFrame, M_min: float = 16, predicted: float = None,
               tolerance: float = None) -> RegressionReport:
    """Log2 regression of the dyadic terms against ``M`` for ``M >= M_min``, leaving out capped scales."""

    selected = terms[terms['M'] >= M_min]
    if 'capped' in selected:
        selected = selected[~selected['capped'].astype(bool)]

    if len(selected) < 2:
        raise LabInvalidArgumentError(f'need two uncapped scales >= {M_min} for a slope, got {len(selected)}')

    return RegressionReport.fit_loglog(selected['M'].values, selected['term'].values, predicted=predicted,
                                       tolerance=tolerance, relative=False)


def sigma_exponent(a: float, gamma: float, alpha: float) -> float:
    """``σ = (α + (a-2)/2 + a(α-1/2)/((a-1)γ - a)) / (a-1)``, the local kernel exponent for ``a ≠ 1``.

    Raises:
        LabInvalidArgumentError: when ``a = 1`` or ``(a-1)γ = a`` (singular formula).
    """

    denominator = (a - 1.0) * gamma - a
    if a == 1 or denominator == 0:
        raise LabInvalidArgumentError(f'sigma is singular for a={a}, gamma={gamma}')

    return (alpha + (a - 2.0) / 2.0 + a * (alpha - 0.5) / denominator) / (a - 1.0)


def local_bound_exponents(alpha: float, gamma: float, a: float) -> List[float]:
    """Powers ``p`` of the local majorant ``K(x) = Σ |x|^p`` for the regime of ``(a, γ, α)``.

    Raises:
        LabUnsupportedRegimeError: when no majorant is stated for the parameters.
    """

    if not 0 < alpha < 1 or a <= 0 or gamma <= 0:
        raise LabUnsupportedRegimeError('local kernel bound', a=a, gamma=gamma, alpha=alpha)

    loss = max(0.0, 1.0 - 1.0 / gamma)

    if a < 1:
        if alpha <= a / 2.0 * loss:
            raise LabUnsupportedRegimeError('local kernel bound', a=a, gamma=gamma, alpha=alpha)
        if gamma <= 1:
            return [alpha - 1.0]
        return [alpha - 1.0, -sigma_exponent(a, gamma, alpha)]

    if a == 1:
        if alpha <= loss:
            raise LabUnsupportedRegimeError('local kernel bound', a=a, gamma=gamma, alpha=alpha)
        return [alpha - 1.0, gamma * (alpha - 1.0)]

    if gamma <= 1 or alpha >= 0.5:
        return [alpha - 1.0]

    if gamma < a / (a - 1.0) and alpha > a / 2.0 * loss:
        return [-sigma_exponent(a, gamma, alpha)]

    raise LabUnsupportedRegimeError('local kernel bound', a=a, gamma=gamma, alpha=alpha)


def local_kernel_bound(x: float, alpha: float, gamma: float, a: float) -> float:
    """Local majorant ``K(x)`` of the oscillatory kernel near the origin.

    - ``0 < a < 1``: ``|x|^{α-1}`` when ``γ <= 1``, ``|x|^{α-1} + |x|^{-σ}`` when ``γ > 1``.
    - ``a = 1``: ``|x|^{α-1} + |x|^{γ(α-1)}``.
    - ``a > 1``: ``|x|^{α-1}`` when ``γ <= 1`` or ``α >= 1/2``, ``|x|^{-σ}`` when ``1 < γ < a/(a-1)``.

    Raises:
        LabInvalidArgumentError: if ``x == 0``.
        LabUnsupportedRegimeError: outside the stated regimes.
    """

    if x == 0:
        raise LabInvalidArgumentError('the local kernel bound is singular at x = 0')

    return float(sum(abs(x) ** p for p in local_bound_exponents(alpha, gamma, a)))


def local_bound_integral(alpha: float, gamma: float, a: float) -> float:
    """``∫_0^1 K(x) dx`` of the local majorant; ``inf`` when a power is not integrable."""

    exponents = local_bound_exponents(alpha, gamma, a)
    if any(p <= -1 for p in exponents):
        return float('inf')
    return float(sum(1.0 / (p + 1.0) for p in exponents))


def bound_ratio_sweep(check: KernelCheck, a_values, t_values, x_values, threads: int = None) -> pd.DataFrame:
    """Samples the Poisson or heat bound ratio on the product of the given values.

    Returns:
        :obj:`pandas.DataFrame` with columns ``a``, ``t``, ``x``, ``ratio``.
    """

    if check is KernelCheck.poisson:
        ratio = poisson_bound_ratio
    elif check is KernelCheck.heat:
        ratio = heat_bound_ratio
    else:
        raise LabInvalidArgumentError(f'bound_ratio_sweep supports poisson and heat, got {check.name}')

    pairs = [(float(a), float(t)) for a in a_values for t in t_values]
    xs = [float(x) for x in x_values]

    def row(pair):
        a, t = pair
        return [ratio(x, t, a) for x in xs]

    ratios = ordered_map(row, pairs, threads=threads)
    return pd.DataFrame([{'a': a, 't': t, 'x': x, 'ratio': r}
                         for (a, t), values in zip(pairs, ratios) for x, r in zip(xs, values)])


def local_ratio_sweep(prm: OscillatoryKernelParams, x_values, times=None, cutoffs: CutoffFamily = None,
                      threads: int = None) -> pd.DataFrame:
    """Samples ``|kernel(x)| / K(x)`` for the oscillatory kernel over positions and time pairs.

    Returns:
        :obj:`pandas.DataFrame` with columns ``t1``, ``t2``, ``x``, ``ratio``.
    """

    cutoffs = cutoffs if cutoffs is not None else CutoffFamily()
    times = times if times is not None else [(prm.t1, prm.t2)]
    jobs = [(t1, t2, float(x)) for t1, t2 in times for x in x_values]

    def ratio(job):
        t1, t2, x = job
        value = abs(oscillatory_kernel(x, prm.with_times(t1, t2), cutoffs))
        return value / local_kernel_bound(x, prm.alpha, prm.gamma, prm.a)

    ratios = ordered_map(ratio, jobs, threads=threads)
    return pd.DataFrame([{'t1': t1, 't2': t2, 'x': x, 'ratio': r} for (t1, t2, x), r in zip(jobs, ratios)])
