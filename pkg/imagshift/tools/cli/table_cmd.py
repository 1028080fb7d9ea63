"""Command-line interface for exporting Gram matrices and eigen-defect tables."""

import argparse
import csv
import io
import sys
from typing import Optional, Sequence

from imagshift.errors import NumericalError, ParameterError
from imagshift.extensions import ExtensionParams, delta_gram, psi_gram
from imagshift.polynomials import EIGEN_LAWS, FAMILIES, RESOLVED_LAW, eigen_defect, gram_matrix
from imagshift.tools.cli.common import EXIT_FAIL, EXIT_OK, EXIT_USAGE, complex_argument, write_output
from imagshift.tools.cli.eval_cmd import FAMILY_PARAMS
from imagshift.tools.sampled_io import format_number, write_matrix

KINDS = ('gram', 'eigen', 'delta_gram', 'psi_gram')
EIGEN_HEADER = ('n', 'law', 'lambda_re', 'lambda_im', 'defect')


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--kind', required=True, choices=KINDS, help='Table to export')
    parser.add_argument('--family', choices=sorted(FAMILY_PARAMS), help='Polynomial family (gram, eigen)')
    parser.add_argument('--a', type=complex_argument, help='Family parameter a')
    parser.add_argument('--b', type=complex_argument, help='Family parameter b')
    parser.add_argument('--c', type=complex_argument, help='Family parameter c')
    parser.add_argument('--d', type=complex_argument, help='Family parameter d')
    parser.add_argument('--phi', type=float, help='phi of Meixner-Pollaczek or of the Delta family')
    parser.add_argument('--size', type=int, default=5, help='Number of degrees (default: 5)')
    parser.add_argument('--all-laws', action='store_true',
                        help='List every candidate eigenvalue law, not only the resolved one')
    parser.add_argument('--tau', type=float, help='tau of the Delta family')
    parser.add_argument('--sigma', type=complex_argument, help='sigma of the Delta family')
    parser.add_argument('--output', '-o', help='Write the CSV to a file instead of stdout')


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description='Export Gram matrices and eigen-defect tables')
    add_arguments(parser)
    return parser.parse_args(argv)


def _missing(args: argparse.Namespace, names: Sequence[str]) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise argparse.ArgumentTypeError(f"--kind {args.kind} needs {', '.join(missing)}")


def build_family(args: argparse.Namespace):
    _missing(args, ('family',))
    names = FAMILY_PARAMS[args.family]
    _missing(args, names)
    values = [getattr(args, name) for name in names]
    if args.family == 'mp':
        values = [values[0].real, values[1]]
    return FAMILIES[args.family](*values)


def eigen_table(family, size: int, all_laws: bool = False) -> str:
    """Relative eigen-defects for degrees below ``size``."""
    laws = list(EIGEN_LAWS[family.kind]) if all_laws else [RESOLVED_LAW[family.kind]]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(EIGEN_HEADER)
    for n in range(size):
        for law in laws:
            value = complex(family.eigenvalue(n, law))
            defect = eigen_defect(family, n, law=law, relative=True)
            writer.writerow([n, law, format_number(value.real), format_number(value.imag),
                             format_number(defect)])
    return buffer.getvalue()


def build_table(args: argparse.Namespace) -> str:
    """
    Compute the requested table as CSV text.

    Raises:
        argparse.ArgumentTypeError: When a required parameter is missing
        NumericalError: For parameters outside the family range
    """
    buffer = io.StringIO()
    if args.kind == 'gram':
        write_matrix(buffer, gram_matrix(build_family(args), args.size).matrix)
    elif args.kind == 'eigen':
        return eigen_table(build_family(args), args.size, args.all_laws)
    else:
        _missing(args, ('tau', 'sigma', 'phi'))
        params = ExtensionParams(args.tau, args.sigma, args.phi)
        result = delta_gram(params) if args.kind == 'delta_gram' else psi_gram(params)
        labels = result.shifts if args.kind == 'delta_gram' else result.orders
        write_matrix(buffer, result.matrix, labels)
    return buffer.getvalue()


def run(args: argparse.Namespace) -> int:
    """Build and write the table; returns the exit code."""
    try:
        text = build_table(args)
    except (argparse.ArgumentTypeError, ParameterError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAIL
    write_output(text, args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the command."""
    sys.exit(run(parse_args(argv)))


if __name__ == '__main__':
    main()
