#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

from typing import Any, Dict

import numpy as np

from ..error import LabInvalidArgumentError
from ..util import dump_json, load_json


class DiscreteMeasure:
    """Finite sum of weighted point masses ``Σ w_i δ_{x_i}``.

    Attributes:
        positions: read-only array of atom positions.
        weights: read-only array of positive weights.
    """

    def __init__(self, positions, weights) -> None:

        positions = np.array(positions, dtype=float).ravel()
        weights = np.array(weights, dtype=float).ravel()

        if positions.size == 0:
            raise LabInvalidArgumentError('a measure needs at least one atom')

        if positions.shape != weights.shape:
            raise LabInvalidArgumentError('positions and weights must have the same length')

        if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(weights))):
            raise LabInvalidArgumentError('positions and weights must be finite')

        if np.any(weights <= 0):
            raise LabInvalidArgumentError('weights must be > 0')

        self.positions = positions
        self.weights = weights
        self.positions.setflags(write=False)
        self.weights.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return np.array_equal(self.positions, other.positions) and np.array_equal(self.weights, other.weights)

    def __str__(self):
        return f'<DiscreteMeasure atoms={self.size} mass={self.total_mass:.6g}>'

    def __len__(self):
        return self.size

    @property
    def size(self) -> int:
        return int(self.positions.size)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def in_unit_ball(self) -> bool:
        """Whether every atom lies in the open ball ``|x| < 1``."""

        return bool(np.all(np.abs(self.positions) < 1))

    def scaled(self, factor: float) -> 'DiscreteMeasure':
        return DiscreteMeasure(self.positions, self.weights * factor)

    @classmethod
    def uniform(cls, n: int, lo: float = 0.0, hi: float = 1.0, mass: float = 1.0) -> 'DiscreteMeasure':
        """``n`` equal atoms at the midpoints of a uniform partition of ``[lo, hi]``."""

        if n < 1 or not hi > lo:
            raise LabInvalidArgumentError('uniform measure requires n >= 1 and hi > lo')

        h = (hi - lo) / n
        return cls(lo + h * (np.arange(n) + 0.5), np.full(n, mass / n))

    @staticmethod
    def from_dict(obj: Any) -> 'DiscreteMeasure':
        """Builds a measure from the JSON document ``{"atoms": [{"x": .., "w": ..}, ..]}``."""

        atoms = obj.get('atoms') if isinstance(obj, dict) else None
        if not isinstance(atoms, list):
            raise LabInvalidArgumentError('measure documents require an "atoms" list')

        try:
            positions = [float(atom['x']) for atom in atoms]
            weights = [float(atom['w']) for atom in atoms]
        except (KeyError, TypeError, ValueError):
            raise LabInvalidArgumentError('every atom must provide numeric "x" and "w"')

        return DiscreteMeasure(positions, weights)

    def to_dict(self) -> Dict[str, Any]:
        return {'atoms': [{'x': float(x), 'w': float(w)} for x, w in zip(self.positions, self.weights)]}

    @classmethod
    def load(cls, path: str) -> 'DiscreteMeasure':
        return cls.from_dict(load_json(path))

    def save(self, path: str) -> None:
        dump_json(self.to_dict(), path)


def cantor_intervals(depth: int, ratio: float = 1.0 / 3.0, lo: float = 0.0, hi: float = 1.0) -> tuple:
    """Left endpoints of the ``2^depth`` intervals of the symmetric Cantor construction.

    Every step keeps the two outer pieces of relative length ``ratio`` of each interval.

    Returns:
        tuple with the sorted left endpoints and the common interval length.
    """

    if depth < 0:
        raise LabInvalidArgumentError('depth must be >= 0')

    if not 0 < ratio < 0.5:
        raise LabInvalidArgumentError('ratio must be in (0, 1/2)')

    lefts = np.array([lo])
    length = hi - lo
    for _ in range(depth):
        length = length * ratio
        lefts = np.concatenate((lefts, lefts + (length / ratio - length)))
    return np.sort(lefts), length


def cantor_measure(depth: int, ratio: float = 1.0 / 3.0, lo: float = 0.0, hi: float = 1.0) -> DiscreteMeasure:
    """Natural measure of the Cantor set at a finite depth: mass ``2^{-depth}`` at the center of each interval.

    The limit set has dimension ``log 2 / log(1/ratio)``.
    """

    lefts, length = cantor_intervals(depth, ratio=ratio, lo=lo, hi=hi)
    return DiscreteMeasure(lefts + 0.5 * length, np.full(lefts.size, 2.0 ** -depth))


def cantor_dimension(ratio: float = 1.0 / 3.0) -> float:
    return float(np.log(2.0) / np.log(1.0 / ratio))
