"""
Complex gamma function and its relatives.

Lanczos approximation (g = 7, nine coefficients) on Re z >= 1/2, an upward
shift for moderately negative real parts and the reflection formula beyond.
All functions accept scalars or numpy arrays; a scalar argument returns a
Python complex.
"""

from typing import Tuple

import numpy as np

from imagshift.errors import PoleError

# Lanczos coefficients for g = 7, n = 9 (Godfrey's set)
LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

LOG_SQRT_TWO_PI = 0.5 * np.log(2.0 * np.pi)
LOG_PI = np.log(np.pi)

# Below this real part the reflection formula replaces the upward shift
REFLECTION_THRESHOLD = -20.0

_POLE_TOL = 1e-14


def as_complex_array(z) -> Tuple[np.ndarray, bool]:
    """Return ``(array, is_scalar)`` for a complex argument."""
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def finish(arr: np.ndarray, scalar: bool):
    """Undo :func:`as_complex_array` on a result."""
    if scalar:
        return complex(arr.reshape(()))
    return arr


def pole_mask(z: np.ndarray) -> np.ndarray:
    """Boolean mask of entries sitting on a pole 0, -1, -2, ..."""
    nearest = np.round(z.real)
    scale = np.maximum(1.0, np.abs(z))
    return (nearest <= 0) & (np.abs(z - nearest) < _POLE_TOL * scale)


def _lanczos_log_gamma(z: np.ndarray) -> np.ndarray:
    zm = z - 1.0
    x = np.full(zm.shape, LANCZOS_COEFFICIENTS[0], dtype=complex)
    for k, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        x = x + coefficient / (zm + k)
    t = zm + LANCZOS_G + 0.5
    return LOG_SQRT_TWO_PI + (zm + 0.5) * np.log(t) - t + np.log(x)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    # log sin(pi z) = log(i/2) - i pi z + log1p(-exp(2 pi i z)) for Im z >= 0
    upper = np.where(z.imag >= 0, z, np.conj(z))
    value = np.log(0.5j) - 1j * np.pi * upper + np.log1p(-np.exp(2j * np.pi * upper))
    return np.where(z.imag >= 0, value, np.conj(value))


def _log_gamma_regular(z: np.ndarray) -> np.ndarray:
    """log Gamma on an array known to be free of poles."""
    out = np.empty(z.shape, dtype=complex)

    right = z.real >= 0.5
    if np.any(right):
        out[right] = _lanczos_log_gamma(z[right])

    middle = (z.real < 0.5) & (z.real >= REFLECTION_THRESHOLD)
    if np.any(middle):
        zm = z[middle]
        shifts = np.ceil(0.5 - zm.real).astype(int)
        value = _lanczos_log_gamma(zm + shifts)
        for k in range(int(shifts.max())):
            active = k < shifts
            value = value - np.where(active, np.log(np.where(active, zm + k, 1.0)), 0.0)
        out[middle] = value

    left = z.real < REFLECTION_THRESHOLD
    if np.any(left):
        zl = z[left]
        out[left] = LOG_PI - _log_sin_pi(zl) - _lanczos_log_gamma(1.0 - zl)

    return out


def log_gamma(z):
    """
    Logarithm of the gamma function.

    The imaginary part is continuous along vertical lines with Re z > 0.

    Args:
        z: Complex scalar or array

    Returns:
        log Gamma(z)

    Raises:
        PoleError: If any entry is a nonpositive integer
    """
    arr, scalar = as_complex_array(z)
    poles = pole_mask(arr)
    if np.any(poles):
        raise PoleError("gamma has a pole at a nonpositive integer",
                        value=arr[poles].ravel()[0])
    return finish(_log_gamma_regular(arr), scalar)


def log_rgamma(z):
    """log(1/Gamma(z)); equals -inf at the poles of Gamma."""
    arr, scalar = as_complex_array(z)
    poles = pole_mask(arr)
    safe = np.where(poles, 1.0, arr)
    out = -_log_gamma_regular(safe)
    out = np.where(poles, -np.inf + 0j, out)
    return finish(out, scalar)


def gamma(z):
    """
    Complex gamma function.

    Args:
        z: Complex scalar or array

    Returns:
        Gamma(z)

    Raises:
        PoleError: At z in {0, -1, -2, ...}
    """
    arr, scalar = as_complex_array(z)
    poles = pole_mask(arr)
    if np.any(poles):
        raise PoleError("gamma has a pole at a nonpositive integer",
                        value=arr[poles].ravel()[0])
    return finish(np.exp(_log_gamma_regular(arr)), scalar)


def rgamma(z):
    """Reciprocal gamma function, entire: zero at the poles of Gamma."""
    arr, scalar = as_complex_array(z)
    poles = pole_mask(arr)
    safe = np.where(poles, 1.0, arr)
    out = np.where(poles, 0.0, np.exp(-_log_gamma_regular(safe)))
    return finish(out, scalar)


def pochhammer(a, n: int):
    """
    Rising factorial (a)_n = a(a+1)...(a+n-1), computed as an exact product.

    Args:
        a: Complex scalar or array
        n: Nonnegative integer

    Returns:
        (a)_n, with (a)_0 = 1
    """
    if n < 0:
        raise ValueError("pochhammer needs a nonnegative integer n")
    arr, scalar = as_complex_array(a)
    out = np.ones(arr.shape, dtype=complex)
    for k in range(n):
        out = out * (arr + k)
    return finish(out, scalar)


def beta(x, y):
    """
    Beta function Gamma(x)Gamma(y)/Gamma(x+y).

    Returns zero when only x+y hits a pole.

    Raises:
        PoleError: If x or y is a pole of Gamma
    """
    xa, xs = as_complex_array(x)
    ya, ys = as_complex_array(y)
    xa, ya = np.broadcast_arrays(xa, ya)
    if np.any(pole_mask(xa)) or np.any(pole_mask(ya)):
        raise PoleError("beta argument at a pole of gamma")
    total = xa + ya
    out = np.exp(_log_gamma_regular(xa) + _log_gamma_regular(ya) + log_rgamma(total))
    return finish(out, xs and ys)
