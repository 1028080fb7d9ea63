"""Command-line interface for evaluating special functions at a list of points."""

import argparse
import csv
import io
import sys
from typing import Callable, List, Optional, Sequence

import numpy as np

from imagshift.errors import NumericalError
from imagshift.extensions.delta import ExtensionParams, delta_eval
from imagshift.polynomials import FAMILIES, eval_polynomial
from imagshift.specfun import gamma, hyp2f1, macdonald_K, whittaker_W
from imagshift.tools.cli.common import (
    EXIT_OK,
    EXIT_USAGE,
    complex_argument,
    points_argument,
    write_output,
)
from imagshift.tools.sampled_io import ERR, format_number

FUNCTIONS = ('gamma', '2F1', 'K', 'W', 'delta', 'polynomial')
TABLE_HEADER = ('at_re', 'at_im', 're', 'im', 'status')
METHODS = ('auto', 'series', 'integral', 'kummer', 'barnes')

# Parameters read by each polynomial family, in constructor order
FAMILY_PARAMS = {
    'mp': ('a', 'phi'),
    'hahn': ('a', 'b'),
    'dual_hahn': ('a', 'b', 'c'),
    'wilson': ('a', 'b', 'c', 'd'),
}


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--fn', required=True, choices=FUNCTIONS, help='Function to evaluate')
    parser.add_argument('--at', type=points_argument,
                        help='Comma-separated evaluation points (complex allowed, e.g. 0.5+0.3j)')
    parser.add_argument('--a', type=complex_argument, help='Parameter a (2F1, polynomial)')
    parser.add_argument('--b', type=complex_argument, help='Parameter b (2F1, polynomial)')
    parser.add_argument('--c', type=complex_argument, help='Parameter c (2F1, polynomial)')
    parser.add_argument('--d', type=complex_argument, help='Parameter d (Wilson)')
    parser.add_argument('--nu', type=complex_argument, help='Order of K')
    parser.add_argument('--x', type=points_argument, help='Positive arguments of K or W')
    parser.add_argument('--rho', type=float, help='First index of W')
    parser.add_argument('--sigma', type=complex_argument, help='Second index of W, or sigma of delta')
    parser.add_argument('--tau', type=float, help='tau of delta')
    parser.add_argument('--phi', type=float, help='phi of delta or Meixner-Pollaczek')
    parser.add_argument('--family', choices=sorted(FAMILY_PARAMS), help='Polynomial family')
    parser.add_argument('--n', type=int, help='Polynomial degree')
    parser.add_argument('--method', default='auto', choices=METHODS, help='Evaluation route of K or W')
    parser.add_argument('--output', '-o', help='Write the table to a file instead of stdout')


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description='Evaluate special functions at a list of points')
    add_arguments(parser)
    return parser.parse_args(argv)


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise argparse.ArgumentTypeError(f"--fn {args.fn} needs {', '.join(missing)}")


def _real(value: complex, name: str) -> float:
    if complex(value).imag != 0:
        raise argparse.ArgumentTypeError(f"--{name} must be real")
    return complex(value).real


def build_evaluator(args: argparse.Namespace) -> Callable[[complex], complex]:
    """
    Map the parsed arguments to a function of one point.

    Raises:
        argparse.ArgumentTypeError: When a parameter the function needs is missing
    """
    if args.fn == 'gamma':
        return lambda z: gamma(z)
    if args.fn == '2F1':
        _require(args, 'a', 'b', 'c')
        return lambda z: hyp2f1(args.a, args.b, args.c, z)
    if args.fn == 'K':
        _require(args, 'nu')
        return lambda x: macdonald_K(args.nu, _real(x, 'x'), method=args.method)
    if args.fn == 'W':
        _require(args, 'rho', 'sigma')
        return lambda x: whittaker_W(args.rho, args.sigma, _real(x, 'x'), method=args.method)
    if args.fn == 'delta':
        _require(args, 'tau', 'sigma', 'phi')
        params = ExtensionParams(args.tau, args.sigma, args.phi)
        return lambda x: delta_eval(params, 0, _real(x, 'x'))
    _require(args, 'family', 'n')
    names = FAMILY_PARAMS[args.family]
    _require(args, *names)
    values = [getattr(args, name) for name in names]
    if args.family == 'mp':
        values = [_real(values[0], 'a'), values[1]]
    family = FAMILIES[args.family](*values)
    return lambda s: eval_polynomial(family, args.n, s)


def evaluation_points(args: argparse.Namespace) -> List[complex]:
    if args.fn in ('K', 'W') and args.x is not None:
        return list(args.x)
    if args.at is None:
        raise argparse.ArgumentTypeError(f"--fn {args.fn} needs --at")
    return list(args.at)


def evaluate_table(evaluator: Callable[[complex], complex], points: Sequence[complex]) -> str:
    """
    One CSV row per point; numerical failures become rows flagged ERR.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(TABLE_HEADER)
    for point in points:
        row = [format_number(point.real), format_number(point.imag)]
        try:
            value = complex(np.asarray(evaluator(point)))
            writer.writerow(row + [format_number(value.real), format_number(value.imag), 'ok'])
        except (NumericalError, ValueError, argparse.ArgumentTypeError) as e:
            print(f"Warning: {e}", file=sys.stderr)
            writer.writerow(row + ['', '', ERR])
    return buffer.getvalue()


def run(args: argparse.Namespace) -> int:
    """Evaluate and write the table; returns the exit code."""
    try:
        evaluator = build_evaluator(args)
        points = evaluation_points(args)
    except (argparse.ArgumentTypeError, NumericalError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    write_output(evaluate_table(evaluator, points), args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the command."""
    sys.exit(run(parse_args(argv)))


if __name__ == '__main__':
    main()
