"""Helpers shared by the command-line tools: exit codes, argument parsing and output."""

import argparse
import sys
from typing import Any, Dict, List, NoReturn, Optional

import numpy as np
import yaml

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def fail(message: str, code: int = EXIT_IO) -> NoReturn:
    """Print an error to stderr and exit with ``code``."""
    print(f"Error: {message}", file=sys.stderr)
    sys.exit(code)


def parse_complex(text: str) -> complex:
    """
    Parse '1', '-0.5', '0.5+0.3j' or '2i' into a complex number.

    Raises:
        ValueError: If the text is not a number
    """
    cleaned = text.strip().replace(' ', '')
    if cleaned.endswith('i'):
        cleaned = cleaned[:-1] + 'j'
    if cleaned in ('j', '+j', '-j'):
        cleaned = cleaned.replace('j', '1j')
    return complex(cleaned)


def parse_points(text: str) -> List[complex]:
    """Comma-separated list of complex numbers."""
    return [parse_complex(part) for part in text.split(',') if part.strip()]


def parse_range(text: str) -> List[complex]:
    """'start,stop,count' as an evenly spaced real grid."""
    parts = text.split(',')
    if len(parts) != 3:
        raise ValueError("range must be start,stop,count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("range count must be positive")
    return [complex(v) for v in np.linspace(start, stop, count)]


def points_argument(text: str) -> List[complex]:
    """argparse type wrapper around :func:`parse_points`."""
    try:
        points = parse_points(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text}")
    if not points:
        raise argparse.ArgumentTypeError("empty point list")
    return points


def complex_argument(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}")


def write_output(text: str, path: Optional[str] = None) -> None:
    """Write ``text`` to ``path`` or stdout; unwritable paths exit with the I/O code."""
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        fail(f"Cannot write {path}: {e}")


def load_yaml_file(file_path: str) -> Dict[str, Any]:
    """
    Load a YAML mapping.

    Exits with the I/O code when the file is missing, unreadable or not a mapping.
    """
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        fail(f"File not found: {file_path}")
    except (OSError, yaml.YAMLError) as e:
        fail(f"Invalid YAML file: {file_path} ({e})")
    if data is None:
        return {}
    if not isinstance(data, dict):
        fail(f"Invalid YAML file: {file_path} (expected a mapping)")
    return data
