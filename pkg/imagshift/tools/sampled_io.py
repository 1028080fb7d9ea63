"""
Sampled-function CSV files.

Columns are ``s_re, s_im, f_re, f_im`` with a header row; rows are sorted
ascending in s_re. Values are written with CSV_DIGITS significant digits
so that a write/read cycle reproduces them exactly. A row whose value
could not be computed carries ``ERR`` in both value columns.
"""

import csv
import io
from typing import Callable, List, NamedTuple, Optional, Sequence, TextIO, Union

import numpy as np
from scipy.interpolate import CubicSpline

from imagshift.utils import config

SAMPLED_HEADER = ('s_re', 's_im', 'f_re', 'f_im')
GRAM_HEADER = ('m', 'n', 're', 'im')
ERR = 'ERR'


class Sampled(NamedTuple):
    """Points and values of a sampled function; ``errors`` flags failed rows."""

    s: np.ndarray
    values: np.ndarray
    errors: np.ndarray


def format_number(value: float, digits: Optional[int] = None) -> str:
    digits = config.CSV_DIGITS if digits is None else digits
    return f"{float(value):.{digits}g}"


def _order(s: np.ndarray) -> np.ndarray:
    return np.lexsort((s.imag, s.real))


def write_sampled(stream: TextIO, s: Sequence[complex], values: Sequence[complex],
                  errors: Optional[Sequence[bool]] = None, digits: Optional[int] = None) -> None:
    """
    Write a sampled function to an open text stream.

    Args:
        stream: Destination
        s: Sample points
        values: Values at the points; ignored where ``errors`` is set
        errors: Rows that failed to evaluate
        digits: Significant digits (default CSV_DIGITS)
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    values = np.atleast_1d(np.asarray(values, dtype=complex))
    errors = np.zeros(s.shape, dtype=bool) if errors is None else np.asarray(errors, dtype=bool)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(SAMPLED_HEADER)
    for index in _order(s):
        point = [format_number(s[index].real, digits), format_number(s[index].imag, digits)]
        if errors[index]:
            writer.writerow(point + [ERR, ERR])
        else:
            writer.writerow(point + [format_number(values[index].real, digits),
                                     format_number(values[index].imag, digits)])


def sampled_to_string(s: Sequence[complex], values: Sequence[complex],
                      errors: Optional[Sequence[bool]] = None, digits: Optional[int] = None) -> str:
    buffer = io.StringIO()
    write_sampled(buffer, s, values, errors, digits)
    return buffer.getvalue()


def read_sampled(stream: TextIO) -> Sampled:
    """
    Read a sampled function.

    Raises:
        ValueError: On a missing or wrong header, a short row or a bad number
    """
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != SAMPLED_HEADER:
        raise ValueError(f"expected header {','.join(SAMPLED_HEADER)}")
    points: List[complex] = []
    values: List[complex] = []
    errors: List[bool] = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(SAMPLED_HEADER):
            raise ValueError(f"line {line}: expected {len(SAMPLED_HEADER)} columns")
        try:
            points.append(complex(float(row[0]), float(row[1])))
            if row[2].strip() == ERR:
                values.append(0j)
                errors.append(True)
            else:
                values.append(complex(float(row[2]), float(row[3])))
                errors.append(False)
        except ValueError:
            raise ValueError(f"line {line}: not a number")
    s = np.array(points, dtype=complex)
    order = _order(s)
    return Sampled(s[order], np.array(values, dtype=complex)[order], np.array(errors, dtype=bool)[order])


def sampled_function(sampled: Sampled, even: bool = False) -> Callable:
    """
    Cubic-spline interpolant of sampled real-axis data, zero outside the samples.

    With ``even`` the data is read as a function of |s|, for images that
    are sampled on the positive half-axis only.

    Raises:
        ValueError: With fewer than two usable rows or non-real points
    """
    keep = ~sampled.errors
    s, values = sampled.s[keep], sampled.values[keep]
    if np.any(s.imag != 0):
        raise ValueError("sampled input must lie on the real axis")
    x, unique = np.unique(s.real, return_index=True)
    if x.size < 2:
        raise ValueError("need at least two sample points")
    spline_re = CubicSpline(x, values[unique].real)
    spline_im = CubicSpline(x, values[unique].imag)
    lo, hi = x[0], x[-1]

    def f(y):
        y = np.real(np.asarray(y))
        if even:
            y = np.abs(y)
        inside = (y >= lo) & (y <= hi)
        return np.where(inside, spline_re(y) + 1j * spline_im(y), 0.0)

    f.name = 'sampled'
    return f


def write_matrix(stream: TextIO, matrix: np.ndarray, labels: Optional[Sequence[Union[int, float]]] = None,
                 digits: Optional[int] = None) -> None:
    """Write a matrix row-major with header ``m,n,re,im``."""
    matrix = np.asarray(matrix, dtype=complex)
    labels = list(range(matrix.shape[0])) if labels is None else list(labels)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(GRAM_HEADER)
    for i, m in enumerate(labels):
        for j, n in enumerate(labels):
            writer.writerow([m, n, format_number(matrix[i, j].real, digits),
                             format_number(matrix[i, j].imag, digits)])
