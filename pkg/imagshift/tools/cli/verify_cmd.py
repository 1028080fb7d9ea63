"""Command-line interface for running verification suites."""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from imagshift.errors import ParameterError
from imagshift.tools.cli.common import EXIT_FAIL, EXIT_OK, EXIT_USAGE, load_yaml_file, write_output
from imagshift.tools.report_tree import render_report
from imagshift.verify import (
    ALL,
    FORMATS,
    SUITE_NAMES,
    SuiteReport,
    SuiteRunner,
    load_schema,
    to_json,
    to_yaml,
    validate_report,
)

CONFIG_SCHEMA = 'verify-config-schema.json'


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--suite', '-s', choices=SUITE_NAMES + (ALL,),
                        help='Suite to run (default: the suites of --config, else all)')
    parser.add_argument('--format', '-f', default='json', choices=FORMATS,
                        help='Report format (default: json)')
    parser.add_argument('--output', '-o', help='Write the report to a file instead of stdout')
    parser.add_argument('--config', '-c', help='YAML file with tolerances, suites and battery')
    parser.add_argument('--tol', type=float, help='Single tolerance replacing every check tolerance')
    parser.add_argument('--tol-scale', type=float, help='Factor applied to every tolerance')
    parser.add_argument('--battery', help='Half-line battery for the kl and wimp suites')
    parser.add_argument('--workers', type=int, help='Number of checks run concurrently')
    parser.add_argument('--timings', action='store_true', help='Record wall time per check')
    parser.add_argument('--failures-only', action='store_true',
                        help='Text format: show only failing checks')
    parser.add_argument('--verbose', '-v', action='store_true', help='Print progress to stdout')


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description='Run a verification suite and report the defects')
    add_arguments(parser)
    return parser.parse_args(argv)


def validate_config(data: Dict[str, Any]) -> Tuple[bool, Optional[str]]:
    """
    Validate a verify configuration against its schema.

    Returns:
        Tuple of (is_valid, error_message)
    """
    return validate_report(data, load_schema(CONFIG_SCHEMA))


def load_config(path: Optional[str]) -> Dict[str, Any]:
    """
    Load and validate the configuration file, or return an empty mapping.

    Raises:
        ParameterError: If the file does not match the schema
    """
    if path is None:
        return {}
    data = load_yaml_file(path)
    is_valid, error = validate_config(data)
    if not is_valid:
        raise ParameterError(f"Invalid configuration {path}", detail=error)
    return data


def selected_suites(args: argparse.Namespace, settings: Dict[str, Any]) -> List[str]:
    if args.suite:
        return [args.suite]
    suites = list(dict.fromkeys(settings.get('suites') or [ALL]))
    return [ALL] if ALL in suites else suites


def render(report: SuiteReport, fmt: str, failures_only: bool = False) -> str:
    if fmt == 'json':
        return to_json(report)
    if fmt == 'yaml':
        return to_yaml(report)
    return render_report(report, failures_only)


def run_suites(args: argparse.Namespace, settings: Dict[str, Any]) -> SuiteReport:
    """Run every selected suite into one report; flags override the configuration."""
    workers = args.workers if args.workers is not None else settings.get('workers')
    runner = SuiteRunner(debug=args.verbose or None, workers=workers,
                         battery=args.battery or settings.get('battery'))
    tol_scale = args.tol_scale if args.tol_scale is not None else settings.get('default_tol_scale', 1.0)
    timings = args.timings or bool(settings.get('timings', False))
    suites = selected_suites(args, settings)
    checks = []
    for suite in suites:
        report = runner.run(suite, tolerances=settings.get('tolerances'), tol_scale=tol_scale,
                            tol=args.tol, timings=timings)
        checks.extend(report.checks)
    return SuiteReport('+'.join(suites), checks)


def run(args: argparse.Namespace) -> int:
    """Run the suites and write the report; returns the exit code."""
    if args.tol is not None and args.tol <= 0:
        print("Error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.tol_scale is not None and args.tol_scale <= 0:
        print("Error: --tol-scale must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.workers is not None and args.workers < 1:
        print("Error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        settings = load_config(args.config)
        report = run_suites(args, settings)
    except ParameterError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    is_valid, error = validate_report(report.to_dict())
    if not is_valid:
        print(f"Warning: report does not match its schema: {error}", file=sys.stderr)

    write_output(render(report, args.format, args.failures_only), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the command."""
    sys.exit(run(parse_args(argv)))


if __name__ == '__main__':
    main()
