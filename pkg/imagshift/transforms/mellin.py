"""
Mellin transform on the half-line with measure dx/x.

    Mf(s) = int_0^inf f(x) x^{is-1} dx,   f(x) = (1/2pi) int Mf(s) x^{-is} ds

Forward integrals are taken in y = log x, where the integrand decays on
both sides whenever Im s lies in the analyticity window of f.
"""

from typing import Callable, Optional, Tuple

import numpy as np

from imagshift.errors import ParameterError, WindowError
from imagshift.operators.difference import DifferenceOperator
from imagshift.quadrature import (
    DecayClass,
    QuadratureConfig,
    QuadResult,
    StripFunction,
    integrate_interval,
    integrate_line,
)
from imagshift.specfun.gamma import finish, gamma
from imagshift.transforms.base import TransformPair, memoize_points
from imagshift.utils.cache import EvaluationCache

PAIR_FORMS = ('inverse', 'printed')


def _real(y) -> np.ndarray:
    return np.real(np.asarray(y))


def _window_half_width(window: Tuple[float, float]) -> float:
    lo, hi = window
    if lo < 0 < hi:
        return min(-lo, hi)
    return 0.0


def mellin_forward(f: Callable, window: Optional[Tuple[float, float]] = None,
                   support: Optional[Tuple[float, float]] = None,
                   cfg: Optional[QuadratureConfig] = None,
                   cache: Optional[EvaluationCache] = None, name: str = '') -> StripFunction:
    """
    Mellin transform of f as a lazily evaluated StripFunction.

    Args:
        f: Vectorized function on (0, inf)
        window: Open interval (lo, hi) of admissible Im s. ``lo`` is the
            power of f at infinity and ``hi`` its power at 0
        support: Finite interval [a, b] outside which f vanishes; the
            integral is then taken over [a, b] in x
        cfg: Quadrature configuration
        cache: Point cache shared between evaluations
        name: Label of the result

    Returns:
        StripFunction evaluating Mf at complex points

    Raises:
        WindowError: On evaluation outside the window
    """
    window = window or (-np.inf, np.inf)
    lo, hi = window
    if lo >= hi:
        raise ParameterError("empty Mellin window", value=window)

    def compute(s):
        if np.any(s.imag <= lo) or np.any(s.imag >= hi):
            bad = s[(s.imag <= lo) | (s.imag >= hi)][0]
            raise WindowError("Im s outside the analyticity window", value=complex(bad),
                              detail=f"window ({lo:g}, {hi:g})")
        if support is not None:
            a, b = support

            def integrand(x):
                x = _real(x)
                with np.errstate(divide='ignore', invalid='ignore'):
                    kernel = np.exp((1j * s[:, None] - 1.0) * np.log(x[None, :]))
                return kernel * f(x)[None, :]

            return integrate_interval(integrand, a, b, cfg).value

        def integrand(y):
            y = _real(y)
            with np.errstate(under='ignore', over='ignore'):
                return np.exp(1j * s[:, None] * y[None, :]) * f(np.exp(y))[None, :]

        return integrate_line(integrand, cfg=cfg).value

    return StripFunction(memoize_points(compute, cache), half_width=_window_half_width(window),
                         decay=DecayClass(), name=name or 'M[f]', window=window)


def mellin_inverse(g: Callable, imag_offset: float = 0.0,
                   cfg: Optional[QuadratureConfig] = None) -> Callable:
    """
    Inverse Mellin transform along the line Im s = imag_offset.

    Returns:
        Vectorized function x -> (1/2pi) int g(s) x^{-is} ds on (0, inf)
    """
    decay = g.decay if isinstance(g, StripFunction) else None

    def evaluate(x):
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr).ravel()
        log_x = np.log(flat)

        def integrand(s):
            return g(s)[None, :] * np.exp(-1j * s[None, :] * log_x[:, None])

        value = np.atleast_1d(integrate_line(integrand, imag_offset, cfg, decay=decay).value)
        return finish((value / (2.0 * np.pi)).reshape(arr.shape), arr.ndim == 0)

    return evaluate


def mellin_norm(f: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm of f in L^2((0, inf), dx/x)."""
    return integrate_line(lambda y: np.abs(f(np.exp(_real(y)))) ** 2, cfg=cfg)


def mellin_image_norm(g: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm of g in L^2(R, ds/2pi)."""
    result = integrate_line(lambda s: np.abs(g(s)) ** 2 / (2.0 * np.pi), cfg=cfg)
    return result


def mellin_pair_identity(alpha: float, x: float, form: str = 'inverse',
                         cfg: Optional[QuadratureConfig] = None) -> Tuple[complex, complex]:
    """
    Both sides of the Mellin pair of (1 + x)^{-alpha}.

    With form 'inverse' the left side is (1/2pi) int Gamma(is)Gamma(alpha-is) x^{-is} ds
    and the right side Gamma(alpha)(1+x)^{-alpha}. With form 'printed' the
    kernel is x^{is-1} and the right side Gamma(alpha) x^{alpha-1}(1+x)^{-alpha}.
    Both integrals run along Im s = -alpha/2.

    Returns:
        (lhs, rhs)
    """
    if alpha <= 0:
        raise ParameterError("pair identity needs alpha > 0", value=alpha)
    if form not in PAIR_FORMS:
        raise ParameterError(f"Unknown form: {form}", detail=f"choose from {PAIR_FORMS}")
    log_x = np.log(x)

    def integrand(s):
        kernel = np.exp(-1j * s * log_x) if form == 'inverse' else np.exp((1j * s - 1.0) * log_x)
        return gamma(1j * s) * gamma(alpha - 1j * s) * kernel

    lhs = integrate_line(integrand, imag_offset=-0.5 * alpha, cfg=cfg).value / (2.0 * np.pi)
    rhs = complex(gamma(alpha)) * (1.0 + x) ** (-alpha)
    if form == 'printed':
        rhs *= x ** (alpha - 1.0)
    return complex(lhs), complex(rhs)


def mellin_shift_operator() -> DifferenceOperator:
    """Shift f(s) -> f(s - i), the image of multiplication by x."""
    zero = lambda s: np.zeros(np.shape(s), dtype=complex)  # noqa: E731
    one = lambda s: np.ones(np.shape(s), dtype=complex)  # noqa: E731
    return DifferenceOperator(zero, zero, one, name='shift')


def mellin_pair(cfg: Optional[QuadratureConfig] = None) -> TransformPair:
    """Mellin transform packaged with its norms and the shift it carries x to."""
    return TransformPair(
        name='mellin',
        forward=lambda f: mellin_forward(f, cfg=cfg, name=f"M[{getattr(f, 'name', 'f')}]"),
        inverse=lambda g: mellin_inverse(g, cfg=cfg),
        source_norm=lambda f, c=None: mellin_norm(f, c or cfg),
        target_norm=lambda g, c=None: mellin_image_norm(g, c or cfg),
        source_weight=lambda x: 1.0 / np.asarray(x),
        target_weight=lambda s: np.full(np.shape(s), 1.0 / (2.0 * np.pi)),
        source_measure='dx/x on (0, inf)',
        target_measure='ds/2pi on R',
        source_multiplication=lambda x: np.asarray(x),
        multiplication_label='x',
        target_operator=mellin_shift_operator(),
    )
