"""
Wimp transform, the Whittaker-kernel analogue of the KL transform.

    Wg(s) = int_0^inf g(x) W_{rho,is}(x) dx/x^2,          rho < 1/2
    g(x)  = int_0^inf Wg(s) W_{rho,is}(x) w(s) ds,  w(s) = |Gamma(1/2-rho+is)/Gamma(2is)|^2 / 2pi
"""

from typing import Callable, Optional, Sequence

import numpy as np

from imagshift.operators.catalog import wimp_operator, wimp_spec
from imagshift.operators.weights import weight_w
from imagshift.quadrature import DecayClass, QuadratureConfig, QuadResult, StripFunction, integrate_line
from imagshift.specfun.bessel import whittaker_W
from imagshift.specfun.gamma import finish
from imagshift.transforms.base import TransformPair, memoize_points
from imagshift.transforms.kontorovich import kl_forward
from imagshift.utils.cache import EvaluationCache

IMAGE_DECAY = DecayClass.exponential(0.5 * np.pi)

# Sample grid of the Whittaker difference equation check
DIFFERENCE_S = (0.6, 1.1, 2.3)
DIFFERENCE_X = (0.7, 1.5, 4.0)


def _real(y) -> np.ndarray:
    return np.real(np.asarray(y))


def wimp_forward(rho: float, g: Callable, cfg: Optional[QuadratureConfig] = None,
                 cache: Optional[EvaluationCache] = None, name: str = '') -> StripFunction:
    """
    Wimp transform of g, evaluated lazily at complex s.

    Raises:
        ParameterError: If rho >= 1/2
    """
    wimp_spec(rho)

    def compute(s):
        def integrand(y):
            y = _real(y)
            x = np.exp(y)
            with np.errstate(under='ignore', over='ignore'):
                kernel = whittaker_W(rho, 1j * s[:, None], x[None, :])
                return kernel * (g(x) * np.exp(-y))[None, :]

        return integrate_line(integrand, cfg=cfg, row_scaled=True).value

    label = name or f"W{rho:g}[{getattr(g, 'name', '') or 'g'}]"
    return StripFunction(memoize_points(compute, cache, float(rho)), decay=IMAGE_DECAY,
                         parity='even', name=label)


def wimp_density(rho: float, s):
    """w(s) = |Gamma(1/2-rho+is)/Gamma(2is)|^2 / 2pi."""
    return weight_w(wimp_spec(rho), s)


def wimp_inverse(rho: float, f: Callable, cfg: Optional[QuadratureConfig] = None) -> Callable:
    """Inverse Wimp transform of an even f, as half the integral over R."""
    spec = wimp_spec(rho)

    def evaluate(x):
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr).ravel()

        def integrand(s):
            s_real = _real(s)
            kernel = whittaker_W(rho, 1j * s_real[None, :], flat[:, None])
            return f(s_real)[None, :] * kernel * weight_w(spec, s_real)[None, :]

        result = integrate_line(integrand, cfg=cfg, decay=IMAGE_DECAY, capped=True)
        value = np.atleast_1d(result.value)
        return finish((0.5 * value).reshape(arr.shape), arr.ndim == 0)

    return evaluate


def wimp_source_norm(g: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm of g in L^2((0, inf), dx/x^2)."""

    def integrand(y):
        y = _real(y)
        with np.errstate(under='ignore', over='ignore'):
            return np.abs(g(np.exp(y))) ** 2 * np.exp(-y)

    return integrate_line(integrand, cfg=cfg)


def wimp_image_norm(rho: float, f: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm int_0^inf |f|^2 w ds of an even f."""
    spec = wimp_spec(rho)
    return integrate_line(lambda s: 0.5 * np.abs(f(_real(s))) ** 2 * weight_w(spec, _real(s)),
                          cfg=cfg, decay=IMAGE_DECAY)


def wimp_from_kl(g: Callable, s, cfg: Optional[QuadratureConfig] = None):
    """
    The rho = 0 transform through the KL transform.

    W_0 g(s) = (2pi)^{-1/2} K G(s) with G(y) = g(2y) y^{-1/2}, from
    K_nu(y) = sqrt(pi/(2y)) W_{0,nu}(2y).
    """
    def reduced(y):
        y = np.asarray(y)
        return g(2.0 * y) / np.sqrt(y)

    arr = np.asarray(s, dtype=complex)
    value = kl_forward(reduced, cfg)(arr) / np.sqrt(2.0 * np.pi)
    return finish(np.asarray(value), arr.ndim == 0)


def whittaker_difference_residual(rho: float, s: Sequence[float] = DIFFERENCE_S,
                                  x: Sequence[float] = DIFFERENCE_X) -> float:
    """
    Largest relative residual of the Whittaker difference equation at sigma = is.

        C_-(W_{sigma-1} - W_sigma) + C_+(W_{sigma+1} - W_sigma) = W_sigma / x

    with C_- = (1/2-rho-sigma)/((-2 sigma)(1-2 sigma)) and
    C_+ = (1/2-rho+sigma)/((2 sigma)(1+2 sigma)); these are the coefficients
    of the Wimp operator.
    """
    sigma = 1j * np.asarray(s, dtype=float)[:, None]
    xx = np.asarray(x, dtype=float)[None, :]
    c_minus = (0.5 - rho - sigma) / ((-2.0 * sigma) * (1.0 - 2.0 * sigma))
    c_plus = (0.5 - rho + sigma) / ((2.0 * sigma) * (1.0 + 2.0 * sigma))
    w0 = whittaker_W(rho, sigma, xx)
    lhs = c_minus * (whittaker_W(rho, sigma - 1.0, xx) - w0) + c_plus * (whittaker_W(rho, sigma + 1.0, xx) - w0)
    rhs = w0 / xx
    scale = np.maximum(np.abs(rhs), np.abs(c_minus * w0) + np.abs(c_plus * w0))
    return float(np.max(np.abs(lhs - rhs) / scale))


def wimp_pair(rho: float, cfg: Optional[QuadratureConfig] = None) -> TransformPair:
    """Wimp pair; 1/x is carried to the Wimp difference operator."""
    return TransformPair(
        name='wimp',
        forward=lambda g: wimp_forward(rho, g, cfg),
        inverse=lambda f: wimp_inverse(rho, f, cfg),
        source_norm=lambda g, c=None: wimp_source_norm(g, c or cfg),
        target_norm=lambda f, c=None: wimp_image_norm(rho, f, c or cfg),
        source_weight=lambda x: np.asarray(x) ** -2.0,
        target_weight=lambda s: wimp_density(rho, s),
        source_measure='dx/x^2 on (0, inf)',
        target_measure='|Gamma(1/2-rho+is)/Gamma(2is)|^2 ds/2pi on (0, inf)',
        source_multiplication=lambda x: 1.0 / np.asarray(x),
        multiplication_label='1/x',
        target_operator=wimp_operator(rho),
    )
