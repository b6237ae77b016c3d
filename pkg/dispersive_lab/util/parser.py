#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import io
import json
from typing import Any, Dict, List, Union

import numpy as np

from ..error import LabInvalidArgumentError


def parse_sweep(spec: Union[str, Dict[str, Any], List[float], None]) -> np.ndarray:
    """Builds a geometric sweep of values from a sweep specification.

    The specification can be given as:
        - a dict ``{"min": 1e-3, "max": 1, "factor": 2}`` (or ``"count"`` instead of ``"factor"``).
        - a string ``"min:max:factor"``, as accepted by the command line.
        - a list of explicit values.

    Args:
        spec: sweep specification.

    Returns:
        increasing array of values; the last value never exceeds ``max``.
    """

    if spec is None:
        raise LabInvalidArgumentError('sweep specification is missing')

    if isinstance(spec, (list, tuple, np.ndarray)):
        values = np.asarray(spec, dtype=float)
        if values.size == 0:
            raise LabInvalidArgumentError('sweep must contain at least one value')
        return np.sort(values)

    if isinstance(spec, str):
        pieces = spec.split(':')
        if len(pieces) != 3:
            raise LabInvalidArgumentError(f'sweep "{spec}" must be in format min:max:factor')
        try:
            spec = {'min': float(pieces[0]), 'max': float(pieces[1]), 'factor': float(pieces[2])}
        except ValueError:
            raise LabInvalidArgumentError(f'sweep "{spec}" must contain numbers')

    if not isinstance(spec, dict) or 'min' not in spec or 'max' not in spec:
        raise LabInvalidArgumentError('sweep must provide min and max')

    lo, hi = float(spec['min']), float(spec['max'])
    if not (0 < lo <= hi):
        raise LabInvalidArgumentError(f'geometric sweep requires 0 < min <= max, got {lo} and {hi}')

    if 'count' in spec:
        count = int(spec['count'])
        if count < 1:
            raise LabInvalidArgumentError('sweep count must be >= 1')
        return np.geomspace(lo, hi, count) if count > 1 else np.array([lo])

    factor = float(spec.get('factor', 2.0))
    if factor <= 1:
        raise LabInvalidArgumentError('sweep factor must be > 1')

    # values are built as lo * factor^k to keep them exact for dyadic specs
    count = int(np.floor(np.log(hi / lo) / np.log(factor) + 1e-9)) + 1
    return lo * factor ** np.arange(count)


def parse_float_list(value: Union[str, List[float], float, None]) -> List[float]:
    """Parses a comma separated list of floats (or passes through a list).
    """

    if value is None:
        return []
    elif isinstance(value, (int, float)):
        return [float(value)]
    elif isinstance(value, str):
        try:
            return [float(v) for v in value.split(',') if v.strip() != '']
        except ValueError:
            raise LabInvalidArgumentError(f'"{value}" is not a comma separated list of numbers')
    else:
        return [float(v) for v in value]


def load_json(path: str) -> Dict[str, Any]:
    """Loads a UTF-8 JSON document.
    """

    try:
        with io.open(path, encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise LabInvalidArgumentError(f'file {path} not found')
    except json.JSONDecodeError as e:
        raise LabInvalidArgumentError(f'file {path} is not valid JSON: {e}')


def dump_json(obj: Dict[str, Any], path: str) -> None:
    """Writes a document as UTF-8 JSON with sorted keys, so identical content gives identical bytes.
    """

    with io.open(path, 'w', encoding='utf-8') as f:
        json.dump(obj, f, indent=2, sort_keys=True, default=_to_builtin)
        f.write('\n')


def _to_builtin(value):
    if isinstance(value, np.generic):
        return value.item()
    elif isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f'{type(value)} is not JSON serializable')
