"""
Kontorovich-Lebedev transform.

    Kg(s) = int_0^inf K_{is}(x) g(x) dx/x
    g(x)  = (2/pi) int_0^inf Kg(s) K_{is}(x) ds / |Gamma(is)|^2

K carries multiplication by 2/x to the operator (1/is)(f(s-i) - f(s+i))
and d/dx - 1/x to (f(s+i) + f(s-i))/2.
"""

from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from imagshift.operators.catalog import kl_operator, kl_spec
from imagshift.operators.weights import weight_w
from imagshift.quadrature import DecayClass, QuadratureConfig, QuadResult, StripFunction, integrate_line
from imagshift.specfun.bessel import macdonald_K
from imagshift.specfun.gamma import finish
from imagshift.transforms.base import DEFAULT_TARGET_POINTS, TransformPair, memoize_points
from imagshift.utils.cache import EvaluationCache

# Decay of Kg along the real axis for the battery class
IMAGE_DECAY = DecayClass.exponential(0.5 * np.pi)


def _real(y) -> np.ndarray:
    return np.real(np.asarray(y))


def kl_forward(g: Callable, cfg: Optional[QuadratureConfig] = None,
               cache: Optional[EvaluationCache] = None, name: str = '') -> StripFunction:
    """
    Kontorovich-Lebedev transform of g as a lazily evaluated StripFunction.

    The kernel is entire in the order, so the result may be evaluated at
    any complex s; it is even in s.
    """

    def compute(s):
        def integrand(y):
            y = _real(y)
            x = np.exp(y)
            with np.errstate(under='ignore'):
                return macdonald_K(1j * s[:, None], x[None, :]) * g(x)[None, :]

        return integrate_line(integrand, cfg=cfg, row_scaled=True).value

    label = name or f"K[{getattr(g, 'name', '') or 'g'}]"
    return StripFunction(memoize_points(compute, cache), decay=IMAGE_DECAY, parity='even', name=label)


def kl_density(s):
    """(2/pi)|Gamma(is)|^{-2} = 4 w_KL(s), the inverse density on (0, inf)."""
    return 4.0 * weight_w(kl_spec(), s)


def kl_inverse(f: Callable, cfg: Optional[QuadratureConfig] = None) -> Callable:
    """
    Inverse transform of an even function f.

    The half-line integral is taken as half the integral over R.
    """

    def evaluate(x):
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr).ravel()

        def integrand(s):
            s_real = _real(s)
            kernel = macdonald_K(1j * s_real[None, :], flat[:, None])
            return f(s_real)[None, :] * kernel * kl_density(s_real)[None, :]

        result = integrate_line(integrand, cfg=cfg, decay=IMAGE_DECAY, capped=True)
        value = np.atleast_1d(result.value)
        return finish((0.5 * value).reshape(arr.shape), arr.ndim == 0)

    return evaluate


def kl_source_norm(g: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm of g in L^2((0, inf), dx/x)."""
    return integrate_line(lambda y: np.abs(g(np.exp(_real(y)))) ** 2, cfg=cfg)


def kl_image_norm(f: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm (2/pi) int_0^inf |f|^2 |Gamma(is)|^{-2} ds of an even f."""
    result = integrate_line(lambda s: 0.5 * np.abs(f(_real(s))) ** 2 * kl_density(_real(s)),
                            cfg=cfg, decay=IMAGE_DECAY)
    return result


class DerivativeProbe(NamedTuple):
    """
    Fit K((d/dx - 1/x)g)(s) = constant * (Kg(s+i) + sign * Kg(s-i)) / 2.

    ``residual`` is the largest misfit of the two-coefficient fit.
    """

    constant: complex
    sign: complex
    residual: float


def kl_derivative_probe(g: Callable, derivative: Callable,
                        points: Sequence[float] = DEFAULT_TARGET_POINTS,
                        cfg: Optional[QuadratureConfig] = None) -> DerivativeProbe:
    """
    Fix the constant and the sign of the derivative image by least squares.

    Args:
        g: Battery function
        derivative: Its derivative g'
        points: Real sample points (at least two)
        cfg: Quadrature configuration
    """
    s = np.asarray(points, dtype=complex)
    transform = kl_forward(g, cfg)
    lhs = np.atleast_1d(kl_forward(lambda x: derivative(x) - g(x) / x, cfg)(s))
    plus = np.atleast_1d(transform(s + 1j))
    minus = np.atleast_1d(transform(s - 1j))
    matrix = 0.5 * np.column_stack([plus, minus])
    (p, q), *_ = np.linalg.lstsq(matrix, lhs, rcond=None)
    residual = float(np.max(np.abs(matrix @ np.array([p, q]) - lhs)))
    return DerivativeProbe(complex(p), complex(q / p) if p != 0 else complex(np.nan), residual)


def kl_derivative_defect(g: Callable, derivative: Callable, constant: complex = 1.0,
                         sign: complex = 1.0, points: Sequence[float] = DEFAULT_TARGET_POINTS,
                         cfg: Optional[QuadratureConfig] = None) -> float:
    """Max |K((d/dx - 1/x)g)(s) - constant (Kg(s+i) + sign Kg(s-i))/2| at ``points``."""
    s = np.asarray(points, dtype=complex)
    transform = kl_forward(g, cfg)
    lhs = np.atleast_1d(kl_forward(lambda x: derivative(x) - g(x) / x, cfg)(s))
    rhs = 0.5 * constant * (np.atleast_1d(transform(s + 1j)) + sign * np.atleast_1d(transform(s - 1j)))
    return float(np.max(np.abs(lhs - rhs)))


def kl_pair(cfg: Optional[QuadratureConfig] = None) -> TransformPair:
    """Kontorovich-Lebedev pair; 2/x is carried to the KL difference operator."""
    return TransformPair(
        name='kl',
        forward=lambda g: kl_forward(g, cfg),
        inverse=lambda f: kl_inverse(f, cfg),
        source_norm=lambda g, c=None: kl_source_norm(g, c or cfg),
        target_norm=lambda f, c=None: kl_image_norm(f, c or cfg),
        source_weight=lambda x: 1.0 / np.asarray(x),
        target_weight=kl_density,
        source_measure='dx/x on (0, inf)',
        target_measure='(2/pi)|Gamma(is)|^-2 ds on (0, inf)',
        source_multiplication=lambda x: 2.0 / np.asarray(x),
        multiplication_label='2/x',
        target_operator=kl_operator(),
    )

