"""
Two-sided Mellin transform of functions on the whole line.

    g1(s) = int_0^inf f(x) x^{is-1/2} dx
    g2(s) = -i e^{-pi s} int_0^inf f(-x) x^{is-1/2} dx

    int |f|^2 dx = (1/2pi) (int |g1|^2 ds + int |g2|^2 e^{2 pi s} ds)
"""

from typing import Callable, Optional, Tuple

import numpy as np

from imagshift.quadrature import DecayClass, QuadratureConfig, StripFunction, integrate_interval, integrate_line
from imagshift.specfun.gamma import finish
from imagshift.transforms.base import PlancherelResult, memoize_points
from imagshift.utils.cache import EvaluationCache


def _real(y) -> np.ndarray:
    return np.real(np.asarray(y))


def _half_transform(f: Callable, side: float, support: Optional[Tuple[float, float]],
                    cfg: Optional[QuadratureConfig]) -> Optional[Callable]:
    """s -> int_0^inf f(side x) x^{is-1/2} dx, or None when f vanishes on that side."""
    if support is not None:
        lo, hi = sorted((side * support[0], side * support[1]))
        lo = max(lo, 0.0)
        if hi <= lo:
            return None

        def compute(s):
            def integrand(x):
                x = _real(x)
                with np.errstate(divide='ignore', invalid='ignore'):
                    kernel = np.exp((1j * s[:, None] - 0.5) * np.log(x[None, :]))
                return kernel * f(side * x)[None, :]

            return integrate_interval(integrand, lo, hi, cfg).value

        return compute

    def compute(s):
        def integrand(y):
            y = _real(y)
            with np.errstate(under='ignore', over='ignore'):
                return np.exp((1j * s[:, None] + 0.5) * y[None, :]) * f(side * np.exp(y))[None, :]

        return integrate_line(integrand, cfg=cfg).value

    return compute


def double_mellin_forward(f: Callable, support: Optional[Tuple[float, float]] = None,
                          cfg: Optional[QuadratureConfig] = None,
                          cache: Optional[EvaluationCache] = None) -> Tuple[StripFunction, StripFunction]:
    """
    The pair (g1, g2) as lazily evaluated StripFunctions.

    Args:
        f: Vectorized function on the real line
        support: Interval outside which f vanishes; each half-line integral
            then runs over its part of the interval only
        cfg: Quadrature configuration
        cache: Point cache; the two components are keyed apart

    Returns:
        (g1, g2)
    """
    cache = EvaluationCache() if cache is None else cache
    name = getattr(f, 'name', '') or 'f'
    parts = []
    for side, label in ((1.0, 'g1'), (-1.0, 'g2')):
        compute = _half_transform(f, side, support, cfg)
        if compute is None:
            compute = lambda s: np.zeros(s.shape, dtype=complex)  # noqa: E731
        elif side < 0:
            compute = (lambda inner: lambda s: -1j * np.exp(-np.pi * s) * inner(s))(compute)
        parts.append(StripFunction(memoize_points(compute, cache, label), half_width=0.0,
                                   decay=DecayClass(), name=f"{label}[{name}]"))
    return parts[0], parts[1]


def double_mellin_inverse(g1: Callable, g2: Callable,
                          cfg: Optional[QuadratureConfig] = None) -> Callable:
    """
    f(x) = (1/2pi) int g1(s) x^{-is-1/2} ds for x > 0 and
    (1/2pi) int i e^{pi s} g2(s) |x|^{-is-1/2} ds for x < 0.
    """

    def evaluate(x):
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr).ravel()
        out = np.zeros(flat.shape, dtype=complex)
        positive = flat > 0
        negative = flat < 0
        for mask, g, factor in ((positive, g1, None), (negative, g2, 1j)):
            if not np.any(mask):
                continue
            log_x = np.log(np.abs(flat[mask]))

            def integrand(s, g=g, factor=factor, log_x=log_x):
                s = _real(s)
                values = g(s) if factor is None else factor * np.exp(np.pi * s) * g(s)
                return values[None, :] * np.exp(-(1j * s[None, :] + 0.5) * log_x[:, None])

            out[mask] = np.atleast_1d(integrate_line(integrand, cfg=cfg).value) / (2.0 * np.pi)
        return finish(out.reshape(arr.shape), arr.ndim == 0)

    return evaluate


def double_mellin_source_norm(f: Callable, support: Optional[Tuple[float, float]] = None,
                              cfg: Optional[QuadratureConfig] = None) -> float:
    """int |f|^2 dx over the line, or over ``support``."""
    if support is not None:
        return float(np.real(integrate_interval(lambda x: np.abs(f(_real(x))) ** 2,
                                                support[0], support[1], cfg).value))
    return float(np.real(integrate_line(lambda x: np.abs(f(_real(x))) ** 2, cfg=cfg).value))


def double_mellin_image_norm(g1: Callable, g2: Callable,
                             cfg: Optional[QuadratureConfig] = None,
                             decay: Optional[DecayClass] = None) -> float:
    """(1/2pi)(int |g1|^2 ds + int |g2|^2 e^{2 pi s} ds)."""
    first = integrate_line(lambda s: np.abs(g1(_real(s))) ** 2, cfg=cfg, decay=decay).value
    second = integrate_line(lambda s: np.abs(g2(_real(s))) ** 2 * np.exp(2.0 * np.pi * _real(s)),
                            cfg=cfg, decay=decay).value
    return float(np.real(first + second)) / (2.0 * np.pi)


def double_mellin_plancherel(f: Callable, support: Optional[Tuple[float, float]] = None,
                             cfg: Optional[QuadratureConfig] = None,
                             decay: Optional[DecayClass] = None) -> PlancherelResult:
    """
    Compare both sides of the Plancherel identity for f.

    Compactly supported f with jumps have images decaying like 1/|s|;
    pass ``decay=DecayClass.polynomial(2)`` for them.
    """
    g1, g2 = double_mellin_forward(f, support, cfg)
    source = double_mellin_source_norm(f, support, cfg)
    target = double_mellin_image_norm(g1, g2, cfg, decay)
    scale = max(abs(source), np.finfo(float).tiny)
    defect = 0.0 if source == target == 0.0 else abs(source - target) / scale
    return PlancherelResult(source, target, defect)
