#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

"""Counterexample families showing that the regularity thresholds of the maximal estimates are sharp.

For ``0 < a < 1`` the datum ``f̂_ν(ξ) = ν g_ν(νξ + 1/ν)`` concentrates at frequency ``-1/ν²``; at the
designated times ``t = x ν^{2(a-1)}/a`` the linear part of the phase cancels and ``|P^t f_ν(x)|``
stays of size ``R_ν = ν^{(a-1)-a/γ}`` on ``[0, a ν^{2a/γ - 2(a-1)}]``. For ``a = 1`` the datum is the
indicator of ``[-N, -N/2]`` and the designated time is ``t = x``.
"""

import enum
import logging
from numbers import Number
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd

from ..error import (LabInvalidArgumentError, LabResolutionError,
                     LabUnsupportedRegimeError)
from ..util import RegressionReport, ordered_map
from .cutoffs import plateau_bump
from .grid import EvolutionParams, SpectrumFunction, check_size, sobolev_norm
from .maximal import TimeGrid
from .propagator import evaluate_at

logger = logging.getLogger(__name__)

NU_MIN = 2.0 ** -10
SUPPORT_SAMPLES = 1024
PADDING = 64
BAND_SAMPLES = 256
THRESHOLD_TOLERANCE = 1e-12


class SharpnessVerdict(enum.Enum):
    """Position of a regularity index with respect to the sharp threshold.
    """
    below_threshold = 0
    at_threshold = 1
    above_threshold = 2

    @classmethod
    def from_string(cls, _str: str) -> 'SharpnessVerdict':
        name = _str.replace('-', '_')
        if name not in [e.name for e in cls]:
            raise LabInvalidArgumentError(f'unknown verdict {_str}')
        return cls[name]

    @classmethod
    def all(cls) -> List[str]:
        return [e.label for e in cls]

    @property
    def label(self) -> str:
        return self.name.replace('_', '-')


def _check_real(name: str, value: float) -> float:
    if not isinstance(value, Number) or isinstance(value, bool) or not np.isfinite(value):
        raise LabInvalidArgumentError(f'{name} must be a finite number, got {value}')
    return float(value)


def convergence_threshold(a: float, gamma: float) -> float:
    """Regularity above which ``P^t_{a,γ} f → f`` almost everywhere for ``f ∈ H^s``.

    ``(a/4)(1-1/γ)₊`` for ``a < 1``, ``(1/2)(1-1/γ)₊`` for ``a = 1`` and ``min((a/4)(1-1/γ)₊, 1/4)`` for ``a > 1``.
    """

    a, gamma = _check_real('a', a), _check_real('gamma', gamma)
    if a <= 0 or gamma <= 0:
        raise LabInvalidArgumentError('a and gamma must be > 0')

    loss = max(0.0, 1.0 - 1.0 / gamma)
    if a < 1:
        return a / 4.0 * loss
    elif a == 1:
        return loss / 2.0
    return min(a / 4.0 * loss, 0.25)


def sharpness_verdict(a: float, gamma: float, s: float) -> Tuple[SharpnessVerdict, float]:
    """Classifies ``s`` against the sharp threshold ``(a/4)(1-1/γ)`` (``a < 1``) or ``(1/2)(1-1/γ)`` (``a = 1``).

    Args:
        a: dispersion order in (0, 1].
        gamma: dissipation exponent, finite and > 1.
        s: regularity index.

    Returns:
        tuple with the verdict and the threshold.
    """

    a, gamma, s = _check_real('a', a), _check_real('gamma', gamma), _check_real('s', s)

    if not 0 < a <= 1:
        raise LabInvalidArgumentError(f'sharpness is established for 0 < a <= 1, got a={a}')

    if gamma <= 1:
        raise LabInvalidArgumentError(f'sharpness requires gamma > 1, got gamma={gamma}')

    threshold = convergence_threshold(a, gamma)
    if abs(s - threshold) <= THRESHOLD_TOLERANCE:
        return SharpnessVerdict.at_threshold, threshold
    elif s < threshold:
        return SharpnessVerdict.below_threshold, threshold
    return SharpnessVerdict.above_threshold, threshold


def _check_f_nu_regime(nu: float, a: float, gamma: float) -> None:
    if not isinstance(nu, Number) or not NU_MIN <= nu < 1:
        raise LabInvalidArgumentError(f'nu must be in [2^-10, 1), got {nu}')

    if not isinstance(a, Number) or not 0 < a < 1:
        raise LabInvalidArgumentError(f'f_nu requires 0 < a < 1, got a={a}')

    if not isinstance(gamma, Number) or not 1 < gamma < np.inf:
        raise LabInvalidArgumentError(f'f_nu requires a finite gamma > 1, got gamma={gamma}')


def bump_radius(nu: float, a: float, gamma: float) -> float:
    """Support radius ``R_ν = ν^{(a-1)-a/γ}`` of ``g_ν``; also the size of ``P*f_ν`` on the designated interval."""

    return nu ** ((a - 1.0) - a / gamma)


def designated_length(nu: float, a: float, gamma: float) -> float:
    """Length ``a ν^{2a/γ - 2(a-1)}`` of the designated interval ``[0, X_ν]``."""

    return a * nu ** (2.0 * a / gamma - 2.0 * (a - 1.0))


def designated_time(x, nu: float, a: float):
    """Time ``t = x ν^{2(a-1)}/a`` cancelling the linear phase of ``P^t f_ν(x)``."""

    return np.asarray(x, dtype=float) * nu ** (2.0 * (a - 1.0)) / a


def build_f_nu(nu: float, a: float, gamma: float, samples: int = SUPPORT_SAMPLES,
               padding: int = PADDING) -> SpectrumFunction:
    """Builds ``f̂_ν(ξ) = ν g_ν(νξ + 1/ν)``, ``g_ν`` being the plateau bump equal to 1 on ``|η| <= R_ν/2`` and 0 on
    ``|η| >= R_ν``.

    The spectrum is sampled with ``samples`` points across its support and zero padded ``padding`` times,
    so the natural spatial grid resolves the designated interval.

    Args:
        nu: scale in [2^-10, 1).
        a: dispersion order in (0, 1).
        gamma: dissipation exponent > 1.
        samples: samples across the support.
        padding: window length over support length.

    Returns:
        the sampled spectrum, centered at ``-1/ν²``.
    """

    _check_f_nu_regime(nu, a, gamma)

    R = bump_radius(nu, a, gamma)
    n = samples * padding
    check_size(n)

    dxi = 2.0 * R / nu / samples
    center = -1.0 / nu ** 2
    xi = center + (np.arange(n) - n // 2) * dxi
    values = nu * plateau_bump(nu * xi + 1.0 / nu, R / 2.0, R)
    return SpectrumFunction(float(xi[0]), dxi, values)


def f_nu_family(nu_list: Iterable[float], a: float, gamma: float) -> List[Tuple[str, SpectrumFunction]]:
    """Labelled counterexample spectra for the given scales."""

    return [(f'nu={nu:.6g}', build_f_nu(nu, a, gamma)) for nu in nu_list]


def f_nu_designated_times(nu_list: Iterable[float], a: float, gamma: float, samples: int = 16, K: int = 30,
                          per_octave: int = 4) -> TimeGrid:
    """Geometric time grid merged with the designated times of every scale."""

    tg = TimeGrid.geometric(K=K, per_octave=per_octave)
    for nu in nu_list:
        xs = designated_length(nu, a, gamma) * np.arange(1, samples + 1) / samples
        tg = tg.merge(TimeGrid.designated(xs, nu, a))
    return tg


def hs_norm_of_counterexample(nu: float, a: float, gamma: float, s: float) -> float:
    """``‖f_ν‖²_{H^s}`` of the sampled counterexample."""

    return sobolev_norm(build_f_nu(nu, a, gamma), s) ** 2


def phase_control(nu: float, a: float, gamma: float, x: float = None, samples: int = 2049) -> float:
    """``sup |F_{x,t,ν}(η)|`` over the support ``|η| <= R_ν`` at the designated time.

    ``F = (x/(aν²)) ((1-νη)^a - 1 + aνη)`` is the phase left once the linear part is cancelled;
    to leading order it is ``(a-1)/2 x η²``, hence bounded by ``a(1-a)/2`` on the designated interval.
    """

    _check_f_nu_regime(nu, a, gamma)
    x = designated_length(nu, a, gamma) if x is None else float(x)
    R = bump_radius(nu, a, gamma)

    if nu * R >= 1:
        raise LabUnsupportedRegimeError('phase control', nu=nu, a=a, gamma=gamma)

    eta = np.linspace(-R, R, samples)
    F = x / (a * nu ** 2) * ((1.0 - nu * eta) ** a - 1.0 + a * nu * eta)
    return float(np.max(np.abs(F)))


def _designated_values(fhat: SpectrumFunction, a: float, gamma: float, xs: np.ndarray,
                       times: Sequence[float]) -> np.ndarray:
    # max over times of |P^t f(x)| at the given points, in time order
    best = np.zeros(xs.size)
    for t in times:
        best = np.maximum(best, np.abs(evaluate_at(fhat, EvolutionParams(a, gamma, float(t)), xs)))
    return best


def _designated_samples(length: float, spacing: float, samples: int, what: str) -> np.ndarray:
    if length < spacing:
        raise LabResolutionError(required=spacing, available=length, what=what)
    return length * np.arange(1, samples + 1) / samples


def designated_witness(nu: float, a: float, gamma: float, samples: int = 16) -> pd.DataFrame:
    """``|P^{t(x)} f_ν(x)|`` at the designated time of every sampled point of the designated interval.

    This is the value the lower bound ``P*f_ν >= |P^{t(x)} f_ν|`` is built on; divided by ``R_ν`` it has
    the same profile at every scale, up to the ``νR_ν`` corrections of the phase and the damping.

    Returns:
        :obj:`pandas.DataFrame` with columns ``x``, ``t``, ``witness``.
    """

    fhat = build_f_nu(nu, a, gamma)
    xs = _designated_samples(designated_length(nu, a, gamma), fhat.natural_grid().dx, samples,
                             f'designated interval of nu={nu}')
    times = designated_time(xs, nu, a)
    witness = np.array([abs(evaluate_at(fhat, EvolutionParams(a, gamma, float(t)), [x])[0])
                        for x, t in zip(xs, times)])
    return pd.DataFrame({'x': xs, 't': times, 'witness': witness})


def designated_profile(nu: float, a: float, gamma: float, tg: TimeGrid = None, samples: int = 16) -> pd.DataFrame:
    """``P*f_ν`` sampled on the designated interval, the sup running over ``tg`` and the designated times.

    Returns:
        :obj:`pandas.DataFrame` with columns ``x``, ``t``, ``witness``, ``value``.
    """

    profile = designated_witness(nu, a, gamma, samples=samples)
    fhat = build_f_nu(nu, a, gamma)
    extra = [] if tg is None else list(tg)
    values = _designated_values(fhat, a, gamma, profile['x'].values, list(profile['t'].values) + extra)
    profile['value'] = np.maximum(values, profile['witness'].values)
    return profile


def lower_bound_scan_f_nu(nu_list: Iterable[float], a: float, gamma: float, tg: TimeGrid = None,
                          samples: int = 16, tolerance: float = 0.10, maximal: bool = False,
                          threads: int = None) -> RegressionReport:
    """Regression of the designated minimum of ``f_ν`` against ``ν``; predicted slope ``(a-1) - a/γ``.

    By default the minimum is taken over the witness ``|P^{t(x)} f_ν(x)|``, a lower bound of ``P*f_ν``.
    With ``maximal`` the sup over the designated times and ``tg`` is used instead; at the coarse scales,
    where ``X_ν`` is not yet larger than the width ``ν/R_ν`` of ``f_ν``, that sup is still carried by
    ``|f_ν|`` itself and the fitted slope is flatter than the prediction.

    Args:
        nu_list: scales (at least six for an acceptable report).
        a: dispersion order in (0, 1).
        gamma: dissipation exponent > 1.
        tg: extra times for the sup (only with ``maximal``).
        samples: designated points per scale.
        tolerance: relative tolerance on the slope.
        maximal: whether to regress the sup over times instead of the witness.
        threads: maximum number of worker threads.

    Returns:
        the regression report (log2 of the minima against log2 ν).
    """

    nu_list = [float(nu) for nu in nu_list]

    if maximal:
        profiles = ordered_map(lambda nu: designated_profile(nu, a, gamma, tg=tg, samples=samples), nu_list,
                               threads=threads)
        column = 'value'
    else:
        profiles = ordered_map(lambda nu: designated_witness(nu, a, gamma, samples=samples), nu_list,
                               threads=threads)
        column = 'witness'

    minima = [float(profile[column].min()) for profile in profiles]
    logger.info('designated minima (%s) for a=%s gamma=%s: %s', column, a, gamma, minima)
    return RegressionReport.fit_loglog(nu_list, minima, predicted=(a - 1.0) - a / gamma, tolerance=tolerance)


def designated_ratio_scan(nu_list: Iterable[float], a: float, gamma: float, s: float, samples: int = 32,
                          threads: int = None) -> pd.DataFrame:
    """Strong type ratios ``‖P*f_ν‖_{L²([0, X_ν])} / ‖f_ν‖_{H^s}`` on the designated intervals.

    The numerator is taken over the witness, so it stays of order ``R_ν X_ν^{1/2}``, a constant; the ratios
    behave like ``ν^{-(a-4s-a/γ)/2}`` (column ``predicted``, normalized to the first scale) and grow without
    bound exactly when ``s`` is below the threshold.

    Returns:
        :obj:`pandas.DataFrame` with columns ``label``, ``nu``, ``numerator``, ``denominator``, ``ratio``,
        ``predicted``.
    """

    nu_list = [float(nu) for nu in nu_list]
    exponent = -(a - 4.0 * s - a / gamma) / 2.0

    def row(nu):
        profile = designated_witness(nu, a, gamma, samples=samples)
        numerator = float(np.sqrt(designated_length(nu, a, gamma) * np.mean(profile['witness'].values ** 2)))
        denominator = np.sqrt(hs_norm_of_counterexample(nu, a, gamma, s))
        return {'label': f'nu={nu:.6g}', 'nu': nu, 'numerator': numerator, 'denominator': denominator,
                'ratio': numerator / denominator}

    frame = pd.DataFrame(ordered_map(row, nu_list, threads=threads))
    frame['predicted'] = frame['ratio'].iloc[0] * (frame['nu'] / frame['nu'].iloc[0]) ** exponent
    logger.debug('designated ratios for s=%s: %s', s, frame['ratio'].tolist())
    return frame


def build_f_A(N: float, samples: int = BAND_SAMPLES, padding: int = PADDING) -> SpectrumFunction:
    """Indicator spectrum of ``A = [-N, -N/2]`` sampled at the midpoints of ``samples`` cells, zero padded.

    The cells tile ``A`` exactly, so ``‖f_A‖²_{H^0} = N/2`` and ``f_A(0) = N/2`` hold to rounding.
    """

    if not isinstance(N, Number) or N < 1:
        raise LabInvalidArgumentError('N must be >= 1')

    n = samples * padding
    check_size(n)

    dxi = N / 2.0 / samples
    offset = (n - samples) // 2
    xi0 = -N + 0.5 * dxi - offset * dxi
    values = np.zeros(n)
    values[offset:offset + samples] = 1.0
    return SpectrumFunction(xi0, dxi, values)


def lower_bound_scan_f_A(N_list: Iterable[float], gamma: float, tg: TimeGrid = None, samples: int = 16,
                         tolerance: float = 0.05, threads: int = None) -> RegressionReport:
    """Regression of ``min_{x ∈ [0, N^{-1/γ}]} P*f_A(x)`` (with ``a = 1`` and designated time ``t = x``) against ``N``.

    The predicted slope is 1; the tolerance is absolute.
    """

    if not isinstance(gamma, Number) or gamma <= 1:
        raise LabInvalidArgumentError('gamma must be > 1')

    N_list = [float(N) for N in N_list]

    def minimum(N):
        fhat = build_f_A(N)
        xs = _designated_samples(N ** (-1.0 / gamma), fhat.natural_grid().dx, samples, f'interval of N={N}')
        extra = [] if tg is None else list(tg)
        # t = x at every designated point, plus the extra times
        best = np.zeros(xs.size)
        for i, x in enumerate(xs):
            if 0 < x < 1:
                best[i] = abs(evaluate_at(fhat, EvolutionParams(1.0, gamma, float(x)), [x])[0])
        if extra:
            best = np.maximum(best, _designated_values(fhat, 1.0, gamma, xs, extra))
        return float(best.min())

    minima = ordered_map(minimum, N_list, threads=threads)
    return RegressionReport.fit_loglog(N_list, minima, predicted=1.0, tolerance=tolerance, relative=False)


def weak_22_ratio_scan(nu_list: Iterable[float], a: float, gamma: float, s: float, level: float = 0.1,
                       samples: int = 64, tolerance: float = 0.15, threads: int = None) -> RegressionReport:
    """Regression of the weak (2,2) quotient ``|{x ∈ [0, X_ν] : P*f_ν(x) > λ_ν}| λ_ν² / ‖f_ν‖²_{H^s}`` against ``ν``.

    ``λ_ν = level·R_ν``. A weak (2,2) bound would keep the quotient bounded; it grows like
    ``ν^{-(a-4s-a/γ)}``, without bound exactly when ``s`` is below the threshold.
    """

    nu_list = [float(nu) for nu in nu_list]

    def quotient(nu):
        profile = designated_profile(nu, a, gamma, samples=samples)
        lam = level * bump_radius(nu, a, gamma)
        measure = designated_length(nu, a, gamma) * float(np.mean(profile['value'].values > lam))
        return measure * lam ** 2 / hs_norm_of_counterexample(nu, a, gamma, s)

    ratios = ordered_map(quotient, nu_list, threads=threads)
    return RegressionReport.fit_loglog(nu_list, ratios, predicted=-(a - 4.0 * s - a / gamma), tolerance=tolerance,
                                       relative=False)
