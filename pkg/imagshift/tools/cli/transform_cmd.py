"""Command-line interface for applying index transforms to sampled or battery inputs."""

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from imagshift.errors import NumericalError
from imagshift.transforms import (
    BATTERIES,
    ROUTES,
    TRANSFORMS,
    double_mellin_forward,
    double_mellin_inverse,
    get_battery,
)
from imagshift.tools.cli.common import EXIT_OK, EXIT_USAGE, fail, parse_range, points_argument, write_output
from imagshift.tools.sampled_io import read_sampled, sampled_function, sampled_to_string

NAMES = tuple(sorted(TRANSFORMS)) + ('double_mellin',)
DIRECTIONS = ('forward', 'inverse')

# Images of these transforms are even and sampled on s >= 0
EVEN_IMAGES = ('kl', 'wimp')


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--name', required=True, choices=NAMES, help='Transform to apply')
    parser.add_argument('--direction', default='forward', choices=DIRECTIONS,
                        help='Apply the transform or its inverse (default: forward)')
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--battery', choices=sorted(BATTERIES), help='Named battery supplying the input')
    source.add_argument('--input', '-i', help='Sampled input CSV (s_re,s_im,f_re,f_im)')
    parser.add_argument('--index', type=int, default=0, help='Battery member to use (default: 0)')
    parser.add_argument('--input2', help='Second component CSV for the inverse double Mellin transform')
    grid = parser.add_mutually_exclusive_group(required=True)
    grid.add_argument('--grid', type=points_argument, help='Comma-separated output points')
    grid.add_argument('--grid-range', help='Evenly spaced output points as start,stop,count')
    parser.add_argument('--alpha', type=float, default=1.0, help='Vilenkin alpha (default: 1)')
    parser.add_argument('--phi', type=float, default=0.8, help='Vilenkin phi (default: 0.8)')
    parser.add_argument('--rho', type=float, default=0.0, help='Wimp rho (default: 0)')
    parser.add_argument('--route', default='euler', choices=ROUTES, help='Vilenkin evaluation route')
    parser.add_argument('--component', type=int, default=1, choices=(1, 2),
                        help='Double Mellin component to output (default: 1)')
    parser.add_argument('--output', '-o', help='Write the CSV to a file instead of stdout')


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description='Apply an index transform to a sampled function')
    add_arguments(parser)
    return parser.parse_args(argv)


def load_sampled_file(file_path: str, even: bool = False) -> Callable:
    """
    Load a sampled-function CSV as an interpolating function.

    Exits with the I/O code when the file is missing or malformed.
    """
    try:
        with open(file_path, 'r', encoding='utf-8', newline='') as f:
            return sampled_function(read_sampled(f), even=even)
    except FileNotFoundError:
        fail(f"File not found: {file_path}")
    except (OSError, ValueError) as e:
        fail(f"Invalid sampled file: {file_path} ({e})")


def load_input(args: argparse.Namespace) -> Callable:
    if args.battery:
        members = get_battery(args.battery)
        if not 0 <= args.index < len(members):
            raise argparse.ArgumentTypeError(
                f"battery {args.battery} has {len(members)} members, index {args.index} is out of range")
        return members[args.index]
    even = args.direction == 'inverse' and args.name in EVEN_IMAGES
    return load_sampled_file(args.input, even=even)


def grid_points(args: argparse.Namespace) -> List[complex]:
    if args.grid is not None:
        return list(args.grid)
    try:
        return parse_range(args.grid_range)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def pair_arguments(args: argparse.Namespace) -> Dict[str, Any]:
    if args.name == 'wimp':
        return {'rho': args.rho}
    if args.name == 'vilenkin':
        return {'alpha': args.alpha, 'phi': args.phi, 'route': args.route}
    return {}


def build_transform(args: argparse.Namespace, f: Callable) -> Callable:
    """
    The function to sample on the grid.

    Raises:
        NumericalError: For parameters outside the range of the transform
    """
    if args.name == 'double_mellin':
        if args.direction == 'forward':
            return double_mellin_forward(f)[args.component - 1]
        g2 = load_sampled_file(args.input2) if args.input2 else (lambda s: np.zeros(np.shape(s), dtype=complex))
        return double_mellin_inverse(f, g2)
    pair = TRANSFORMS[args.name](**pair_arguments(args))
    return pair.forward(f) if args.direction == 'forward' else pair.inverse(f)


def sample(function: Callable, points: Sequence[complex]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate at each point; failures are flagged instead of aborting.

    Returns:
        (values, errors)
    """
    values = np.zeros(len(points), dtype=complex)
    errors = np.zeros(len(points), dtype=bool)
    for index, point in enumerate(points):
        try:
            argument = point.real if point.imag == 0 else point
            values[index] = complex(np.asarray(function(argument)))
        except NumericalError as e:
            print(f"Warning: {e}", file=sys.stderr)
            errors[index] = True
    return values, errors


def run(args: argparse.Namespace) -> int:
    """Transform and write the CSV; returns the exit code."""
    try:
        points = grid_points(args)
        function = build_transform(args, load_input(args))
    except (argparse.ArgumentTypeError, NumericalError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    values, errors = sample(function, points)
    write_output(sampled_to_string(points, values, errors), args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the command."""
    sys.exit(run(parse_args(argv)))


if __name__ == '__main__':
    main()
