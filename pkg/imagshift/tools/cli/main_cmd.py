"""Umbrella command dispatching to the eval, transform, verify and table tools."""

import argparse
import sys
from typing import Optional, Sequence

from imagshift import __version__
from imagshift.tools.cli import eval_cmd, table_cmd, transform_cmd, verify_cmd

COMMANDS = {
    'eval': (eval_cmd, 'Evaluate special functions at a list of points'),
    'transform': (transform_cmd, 'Apply an index transform to a sampled function'),
    'verify': (verify_cmd, 'Run a verification suite and report the defects'),
    'table': (table_cmd, 'Export Gram matrices and eigen-defect tables'),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='imagshift', description='Imaginary-shift special functions toolkit')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, (module, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        module.add_arguments(sub)
        sub.set_defaults(handler=module.run)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the command."""
    args = build_parser().parse_args(argv)
    sys.exit(args.handler(args))


if __name__ == '__main__':
    main()
