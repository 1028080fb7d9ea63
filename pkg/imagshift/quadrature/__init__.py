"""Weighted quadrature on lines, half-lines and circles."""

from imagshift.quadrature.differentiate import (
    richardson_derivative,
    richardson_second_derivative,
)
from imagshift.quadrature.integrate import (
    EXPONENTIAL,
    POLYNOMIAL,
    SUPER_EXPONENTIAL,
    DecayClass,
    QuadratureConfig,
    StripFunction,
    inner_product,
    integrate_circle,
    integrate_half_line,
    integrate_interval,
    integrate_line,
)
from imagshift.quadrature.rules import DoubleExponentialIntegrator, QuadResult

__all__ = [
    'DecayClass',
    'StripFunction',
    'QuadratureConfig',
    'QuadResult',
    'DoubleExponentialIntegrator',
    'SUPER_EXPONENTIAL',
    'EXPONENTIAL',
    'POLYNOMIAL',
    'integrate_line',
    'integrate_half_line',
    'integrate_interval',
    'integrate_circle',
    'inner_product',
    'richardson_derivative',
    'richardson_second_derivative',
]
