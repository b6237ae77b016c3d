#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import numpy as np

from ..error import LabInvalidArgumentError


def _flat(u: np.ndarray) -> np.ndarray:
    # e^{-1/u} for u > 0, zero otherwise
    positive = u > 0
    return np.where(positive, np.exp(-1.0 / np.where(positive, u, 1.0)), 0.0)


def smooth_step(u) -> np.ndarray:
    """C^∞ transition equal to 0 for ``u <= 0`` and 1 for ``u >= 1``, non-decreasing in between."""

    u = np.asarray(u, dtype=float)
    left = _flat(u)
    right = _flat(1.0 - u)
    return left / (left + right)


def plateau_bump(x, inner: float, outer: float) -> np.ndarray:
    """Even C^∞ bump equal to 1 on ``|x| <= inner`` and 0 on ``|x| >= outer``, non-increasing in ``|x|``.

    This is the single smooth profile of the package: the cutoffs of :obj:`CutoffFamily`
    and the bump of the counterexample spectra are all built from it.

    Args:
        x: evaluation points.
        inner: plateau radius.
        outer: support radius.

    Returns:
        array of values in [0, 1].
    """

    if not 0 < inner < outer:
        raise LabInvalidArgumentError('plateau_bump requires 0 < inner < outer')

    r = np.abs(np.asarray(x, dtype=float))
    return 1.0 - smooth_step((r - inner) / (outer - inner))


class CutoffFamily:
    """Cutoff functions used in truncations and dyadic decompositions.

    - ``chi``: low frequency cutoff, 1 on ``|ξ| <= 1``, 0 on ``|ξ| >= 2``.
    - ``eta``: dyadic annulus bump ``chi(ξ/2) - chi(ξ)``, supported in ``1 <= |ξ| <= 4``.
    - ``mu``: global even bump, 1 on ``|ξ| <= 1/2``, 0 on ``|ξ| >= 1``; it is also the
      truncation bump of the variable time operator.

    ``chi(ξ) + Σ_{M=1,2,4,..,2^K} eta(ξ/M) = chi(ξ/2^{K+1})`` telescopes, hence the
    partition of unity on ``|ξ| <= 2^{K+1}``.
    """

    chi_plateau = 1.0
    chi_support = 2.0
    mu_plateau = 0.5
    mu_support = 1.0

    def __str__(self):
        return '<CutoffFamily chi=[1,2] eta=[1,4] mu=[1/2,1]>'

    def chi(self, xi) -> np.ndarray:
        return plateau_bump(xi, self.chi_plateau, self.chi_support)

    def eta(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return self.chi(xi / 2.0) - self.chi(xi)

    def mu(self, xi) -> np.ndarray:
        return plateau_bump(xi, self.mu_plateau, self.mu_support)

    def partition_sum(self, xi, M_max: int) -> np.ndarray:
        """Evaluates ``chi(ξ) + Σ_{M dyadic <= M_max} eta(ξ/M)`` term by term."""

        dyadics = dyadic_scales(M_max)
        xi = np.asarray(xi, dtype=float)
        total = self.chi(xi)
        for M in dyadics:
            total = total + self.eta(xi / M)
        return total


def dyadic_scales(M_max: int) -> np.ndarray:
    """Returns ``1, 2, 4, .., M_max``; ``M_max`` must be a power of two."""

    if M_max < 1:
        raise LabInvalidArgumentError('M_max must be >= 1')

    exponent = int(round(np.log2(M_max)))
    if 2 ** exponent != M_max:
        raise LabInvalidArgumentError(f'M_max must be a power of two, got {M_max}')

    return 2.0 ** np.arange(exponent + 1)
