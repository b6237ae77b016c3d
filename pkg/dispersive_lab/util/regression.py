#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

from typing import Any, Dict

import numpy as np
import pandas as pd
from scipy.stats import linregress

from ..error import LabInvalidArgumentError, LabNumericError

MIN_SAMPLES = 6
MIN_R2 = 0.99


class RegressionReport:
    """Least squares fit of ``y = slope·x + intercept``, compared against a predicted slope.

    Attributes:
        x: abscissae of the fit (usually logarithms).
        y: ordinates of the fit.
        slope: fitted slope.
        intercept: fitted intercept.
        r2: coefficient of determination.
        predicted: predicted slope (None if there is no prediction).
        tolerance: accepted deviation from the prediction.
        relative: if True the tolerance is relative to ``|predicted|``, otherwise absolute.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray, slope: float, intercept: float, r2: float,
                 predicted: float = None, tolerance: float = None, relative: bool = True) -> None:

        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        self.slope = float(slope)
        self.intercept = float(intercept)
        self.r2 = float(r2)
        self.predicted = None if predicted is None else float(predicted)
        self.tolerance = None if tolerance is None else float(tolerance)
        self.relative = relative

    def __str__(self):
        return f'<RegressionReport slope={self.slope:.6g} intercept={self.intercept:.6g} r2={self.r2:.6g} predicted={self.predicted}>'

    @classmethod
    def fit(cls, x, y, predicted: float = None, tolerance: float = None, relative: bool = True) -> 'RegressionReport':
        """Fits a line through the given samples.

        Args:
            x: abscissae.
            y: ordinates.
            predicted: predicted slope.
            tolerance: accepted deviation from the predicted slope.
            relative: whether ``tolerance`` is relative to the predicted slope.

        Returns:
            the fitted report.
        """

        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)

        if x.shape != y.shape or x.ndim != 1:
            raise LabInvalidArgumentError('regression samples must be two 1-D arrays of equal length')

        if x.size < 2:
            raise LabInvalidArgumentError('regression requires at least two samples')

        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise LabNumericError('regression samples are not finite', diagnostics={'samples': x.size})

        fit = linregress(x, y)
        return cls(x=x, y=y, slope=fit.slope, intercept=fit.intercept, r2=fit.rvalue ** 2,
                   predicted=predicted, tolerance=tolerance, relative=relative)

    @classmethod
    def fit_loglog(cls, x, y, base: float = 2.0, **kwargs) -> 'RegressionReport':
        """Fits ``log_base(y)`` against ``log_base(x)``; both must be positive."""

        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if np.any(x <= 0) or np.any(y <= 0):
            raise LabNumericError('log-log regression requires positive samples',
                                  diagnostics={'min_x': float(np.min(x)), 'min_y': float(np.min(y))})
        return cls.fit(np.log(x) / np.log(base), np.log(y) / np.log(base), **kwargs)

    @property
    def deviation(self) -> float:
        """Deviation between the measured and predicted slope (relative or absolute)."""

        if self.predicted is None:
            return None
        diff = abs(self.slope - self.predicted)
        if self.relative and self.predicted != 0:
            return diff / abs(self.predicted)
        return diff

    @property
    def passed(self) -> bool:
        """Whether the fit matches the prediction within tolerance, with at least 6 samples and R² >= 0.99."""

        if self.predicted is None or self.tolerance is None:
            return False
        return bool(self.deviation <= self.tolerance and self.r2 >= MIN_R2 and self.x.size >= MIN_SAMPLES)

    def to_frame(self) -> pd.DataFrame:
        """Returns the samples with the fit parameters repeated on every row (columns x, y, slope, intercept, r2)."""

        return pd.DataFrame({'x': self.x, 'y': self.y, 'slope': self.slope,
                             'intercept': self.intercept, 'r2': self.r2})

    def to_dict(self) -> Dict[str, Any]:
        return {'predicted': self.predicted, 'measured': self.slope, 'tolerance': self.tolerance,
                'intercept': self.intercept, 'r2': self.r2, 'samples': int(self.x.size), 'pass': self.passed}
