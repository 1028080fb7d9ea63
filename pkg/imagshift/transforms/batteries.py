"""
Fixed batteries of test functions for the transform and operator checks.

Half-line functions are smooth on (0, inf) and vanish to all orders at
both ends; line functions are entire and decay faster than any weight
used here. Batteries are looked up by id from the CLI and the verify
suites, so their members must not change.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from imagshift.errors import ParameterError
from imagshift.quadrature import DecayClass, StripFunction
from imagshift.specfun.bessel import macdonald_K

HALF_LINE = 'half_line'
LINE = 'line'


@dataclass(frozen=True)
class BatteryFunction:
    """
    Test function with optional closed-form companions.

    ``derivative`` is d/dx of the function; ``fourier`` is
    y -> int f(s) e^{isy} ds for functions on the line.
    """

    name: str
    eval: Callable
    domain: str = HALF_LINE
    derivative: Optional[Callable] = None
    fourier: Optional[Callable] = None

    def __call__(self, x):
        return self.eval(x)

    def as_strip(self, half_width: float = np.inf) -> StripFunction:
        return StripFunction(self.eval, half_width=half_width, decay=DecayClass(), name=self.name)


def _exp_pair(c: float) -> BatteryFunction:
    """e^{-cx - 1/(cx)} and its derivative."""

    def f(x):
        x = np.asarray(x)
        with np.errstate(under='ignore', divide='ignore'):
            return np.exp(-c * x - 1.0 / (c * x))

    def df(x):
        x = np.asarray(x)
        return (-c + 1.0 / (c * x * x)) * f(x)

    return BatteryFunction(f"exp_{c:g}", f, HALF_LINE, derivative=df)


def _power_exp(p: float) -> BatteryFunction:
    """x^p e^{-x - 1/x}."""

    def f(x):
        x = np.asarray(x)
        with np.errstate(under='ignore', divide='ignore'):
            return x ** p * np.exp(-x - 1.0 / x)

    def df(x):
        x = np.asarray(x)
        return (p / x - 1.0 + 1.0 / (x * x)) * f(x)

    return BatteryFunction(f"power_{p:g}", f, HALF_LINE, derivative=df)


def half_line_default() -> List[BatteryFunction]:
    """Scale family of e^{-x-1/x}."""
    return [_exp_pair(1.0), _exp_pair(2.0), _exp_pair(0.5)]


def half_line_wimp() -> List[BatteryFunction]:
    return [_exp_pair(1.0), _power_exp(1.5)]


def zero_function(domain: str = HALF_LINE) -> BatteryFunction:
    def f(x):
        return np.zeros(np.shape(x), dtype=complex)

    return BatteryFunction('zero', f, domain, derivative=f, fourier=f)


def gaussian(shift: float = 0.0, tilt: float = 0.0, width: float = 1.0) -> BatteryFunction:
    """
    e^{-(s - shift)^2/width^2 + tilt*s} on the line.

    The Fourier companion is the closed Gaussian integral.
    """
    scale = 1.0 / width ** 2

    def f(s):
        s = np.asarray(s)
        return np.exp(-scale * (s - shift) ** 2 + tilt * s)

    def fourier(y):
        # int exp(-scale s^2 + b s) ds with b = 2 scale shift + tilt + iy
        b = 2.0 * scale * shift + tilt + 1j * np.asarray(y)
        return np.sqrt(np.pi / scale) * np.exp(b * b / (4.0 * scale) - scale * shift ** 2)

    return BatteryFunction(f"gauss_{shift:g}_{tilt:g}_{width:g}", f, LINE, fourier=fourier)


def k_profile(c: float = 1.0, shift: float = 0.0) -> BatteryFunction:
    """
    K_{i(s - shift)}(c)/pi on the line.

    Its Fourier companion e^{i shift y - c cosh y} decays doubly
    exponentially, so the Vilenkin image of this function decays fast.
    """
    if c <= 0:
        raise ParameterError("k_profile needs c > 0", value=c)

    def f(s):
        s = np.asarray(s)
        return macdonald_K(1j * (s - shift), c) / np.pi

    def fourier(y):
        y = np.asarray(y)
        return np.exp(1j * shift * y - c * np.cosh(y))

    return BatteryFunction(f"kprofile_{c:g}_{shift:g}", f, LINE, fourier=fourier)


def line_gaussians() -> List[BatteryFunction]:
    """Gaussian battery for the operator symmetry checks."""
    return [gaussian(), gaussian(shift=0.5, width=0.8), gaussian(shift=-0.3, tilt=0.4)]


def vilenkin_default() -> List[BatteryFunction]:
    return [k_profile(1.0), k_profile(1.5, shift=0.4)]


def vilenkin_gaussian() -> List[BatteryFunction]:
    """The e^{-s^2 - pi s/2} family; its image has a log-normal tail in t."""
    return [gaussian(tilt=-0.5 * np.pi)]


BATTERIES: Dict[str, Callable[[], List[BatteryFunction]]] = {
    'half_line_default': half_line_default,
    'half_line_wimp': half_line_wimp,
    'line_gaussians': line_gaussians,
    'vilenkin_default': vilenkin_default,
    'vilenkin_gaussian': vilenkin_gaussian,
    'zero': lambda: [zero_function()],
}


def get_battery(battery_id: str) -> List[BatteryFunction]:
    """
    Look up a battery by id.

    Raises:
        ParameterError: For an unknown id
    """
    if battery_id not in BATTERIES:
        raise ParameterError(f"Unknown battery: {battery_id}",
                             detail=f"choose from {', '.join(sorted(BATTERIES))}")
    return BATTERIES[battery_id]()
