#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

"""Command line front end: ``dispersive-lab <command> [options]``.

Options can also be given in a JSON file with ``--config``; its keys are the option names (with
underscores) and flags given on the command line override them. Exit codes: 0 on success, 2 on invalid
arguments, 3 on numeric failures and 4 on unsupported parameter regimes.
"""

import argparse
import io
import logging
import sys
from typing import Dict, List, Optional

from ..error import (LabInvalidArgumentError, LabNumericError,
                     LabUnsupportedRegimeError)
from ..core import KernelCheck
from ..util import dump_json, load_json
from .commands import COMMANDS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_UNSUPPORTED = 4
FLOAT_FORMAT = '%.12e'


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, help='JSON file with option values; flags override it.')
    common.add_argument('--threads', type=int, help='Maximum number of worker threads.')
    common.add_argument('--json-summary', type=str, dest='json_summary', help='Path of the JSON summary.')
    common.add_argument('--out', type=str, help='Path of the CSV output (standard output when omitted).')
    common.add_argument('--verbose', action='store_true', default=None, help='Log progress to standard error.')
    return common


def _evolution_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--a', type=float, help='Dispersion order a > 0.')
    parser.add_argument('--gamma', type=float, help='Dissipation exponent gamma > 0.')


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with one subcommand per experiment."""

    parser = argparse.ArgumentParser(prog='dispersive-lab',
                                     description='Numerical experiments on complex time fractional Schrödinger evolutions.')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True
    common = _common_options()

    p = sub.add_parser('propagate', parents=[common], help='Evolve a spectrum and write x,re,im,abs.')
    _evolution_options(p)
    p.add_argument('--t', type=float, help='Time in (0, 1).')
    p.add_argument('--input', type=str, help='JSON spectrum {"xi0", "dxi", "re", "im"}.')
    p.add_argument('--grid-n', type=int, dest='grid_n', help='Points of the output grid.')
    p.add_argument('--grid-l', type=float, dest='grid_l', help='Half width of the output grid.')

    p = sub.add_parser('kernel-check', parents=[common], help='Sample a kernel bound.')
    _evolution_options(p)
    p.add_argument('--which', type=str, help=f'One of {", ".join(KernelCheck.all())}.')
    p.add_argument('--a-values', type=str, dest='a_values', help='Orders for the poisson and heat sweeps.')
    p.add_argument('--t-sweep', type=str, dest='t_sweep', help='Times as min:max:factor or a list.')
    p.add_argument('--x-sweep', type=str, dest='x_sweep', help='Positions as min:max:factor or a list.')
    p.add_argument('--sigma', type=float, help='Order of the Bessel kernel.')
    p.add_argument('--alpha', type=float, help='Regularity gain of the oscillatory kernel.')
    p.add_argument('--t1', type=float, help='First time of the oscillatory kernel.')
    p.add_argument('--t2', type=float, help='Second time of the oscillatory kernel.')
    p.add_argument('--m-max', type=int, dest='m_max', help='Largest dyadic scale of the lambda check.')

    p = sub.add_parser('sharpness', parents=[common], help='Lower bound regression of the counterexamples.')
    _evolution_options(p)
    p.add_argument('--s', type=float, help='Regularity index.')
    p.add_argument('--nu-sweep', type=str, dest='nu_sweep', help='Scales nu for a < 1.')
    p.add_argument('--n-sweep', type=str, dest='n_sweep', help='Band sizes N for a = 1.')

    p = sub.add_parser('maximal-scan', parents=[common], help='Maximal function ratio scans.')
    _evolution_options(p)
    p.add_argument('--mode', type=str, choices=['strong', 'lp', 'weak', 'convergence', 'domination'])
    p.add_argument('--s', type=float, help='Regularity index of the strong scan.')
    p.add_argument('--p', type=float, help='Exponent of the lp scan.')
    p.add_argument('--input', type=str, help='JSON spectrum; the counterexample family when omitted.')
    p.add_argument('--nu-sweep', type=str, dest='nu_sweep', help='Scales of the counterexample family.')
    p.add_argument('--k', type=int, help='Octaves of the geometric time grid.')
    p.add_argument('--per-octave', type=int, dest='per_octave', help='Times per octave.')
    p.add_argument('--domain', type=str, choices=['local', 'global'])
    p.add_argument('--lambda-sweep', type=str, dest='lambda_sweep', help='Levels of the weak scan.')
    p.add_argument('--t-sweep', type=str, dest='t_sweep', help='Times of the domination check.')
    p.add_argument('--kinds', type=str, help='Comma separated semigroups of the domination check.')

    p = sub.add_parser('energy', parents=[common], help='Discrete s-energy of a measure.')
    p.add_argument('--s', type=float, help='Energy exponent.')
    p.add_argument('--input', type=str, help='JSON measure {"atoms": [{"x", "w"}]}.')
    p.add_argument('--uniform', type=int, help='Uniform measure with this many atoms on [0, 1].')
    p.add_argument('--cantor', type=int, help='Cantor measure of this depth.')
    p.add_argument('--ratio', type=float, help='Scaling ratio of the Cantor construction.')
    p.add_argument('--cell-width', type=float, dest='cell_width', help='Width of the cell carrying each atom.')
    p.add_argument('--frostman', type=str, help='Comma separated Cantor depths.')

    p = sub.add_parser('dimension-probe', parents=[common], help='Box counting dimension of a set.')
    _evolution_options(p)
    p.add_argument('--s', type=float, help='Regularity index of the divergence probe.')
    p.add_argument('--points', type=str, help='JSON list of points.')
    p.add_argument('--cantor', type=int, help='Cantor set of this depth.')
    p.add_argument('--ratio', type=float, help='Scaling ratio of the Cantor construction.')
    p.add_argument('--input', type=str, help='JSON spectrum of the divergence probe.')
    p.add_argument('--nu', type=float, help='Counterexample scale of the divergence probe.')
    p.add_argument('--lambda', type=float, dest='lam', help='Level of the divergence probe.')
    p.add_argument('--t-max', type=float, dest='t_max', help='Largest time of the divergence probe.')
    p.add_argument('--k', type=int, help='Octaves of the divergence probe time grid.')
    p.add_argument('--scales', type=str, help='Box sizes as min:max:factor.')

    return parser


def _option_types(parser: argparse.ArgumentParser, command: str) -> Dict[str, type]:
    # dest -> int or float for the numeric options of one command
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return {option.dest: option.type for option in action.choices[command]._actions
                    if option.type in (int, float)}
    return {}


def _merge_config(args: argparse.Namespace, types: Dict[str, type] = None) -> argparse.Namespace:
    if args.config is None:
        return args

    types = types or {}

    config = load_json(args.config)
    if not isinstance(config, dict):
        raise LabInvalidArgumentError(f'config {args.config} must be a JSON object')

    for key, value in config.items():
        key = key.replace('-', '_')
        if not hasattr(args, key):
            raise LabInvalidArgumentError(f'unknown option "{key}" in {args.config}')
        if getattr(args, key) is not None:
            continue
        if value is not None and key in types:
            try:
                value = types[key](value)
            except (TypeError, ValueError):
                raise LabInvalidArgumentError(f'option "{key}" in {args.config} must be {types[key].__name__}, '
                                              f'got {value!r}')
        setattr(args, key, value)
    return args


def _write(frame, path: Optional[str]) -> None:
    if path is None:
        frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)
    else:
        with io.open(path, 'w', encoding='utf-8', newline='') as f:
            frame.to_csv(f, index=False, float_format=FLOAT_FORMAT)


def main(argv: Optional[List[str]] = None) -> int:
    """Runs one command and returns its exit code."""

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        args = _merge_config(args, _option_types(parser, args.command))
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                            format='%(asctime)s %(levelname)s %(name)s: %(message)s')
        logging.captureWarnings(True)

        logger.info('running %s', args.command)
        frame, summary = COMMANDS[args.command](args)
        _write(frame, args.out)

        if args.json_summary is not None:
            summary = dict(summary, command=args.command)
            dump_json(summary, args.json_summary)

    except LabInvalidArgumentError as e:
        print(f'dispersive-lab {args.command}: {e}', file=sys.stderr)
        return EXIT_USAGE
    except LabUnsupportedRegimeError as e:
        print(f'dispersive-lab {args.command}: {e}', file=sys.stderr)
        return EXIT_UNSUPPORTED
    except LabNumericError as e:
        print(f'dispersive-lab {args.command}: {e}', file=sys.stderr)
        return EXIT_NUMERIC

    return EXIT_OK
