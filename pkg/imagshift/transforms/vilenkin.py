"""
Vilenkin transform on L^2(R, W), W(t) = e^{pi t}|Gamma(alpha/2 + it)|^2 / 2pi.

    Vg(t) = (C/Gamma(alpha)) e^{-i phi t} int g(s) 2F1[alpha/2-is, alpha/2+it; alpha; z] w0(s) ds

with z = 1 - e^{-2 phi}, C = z^{alpha/2} and w0(s) = |Gamma(alpha/2 + is)|^2 / 2pi.
Three routes evaluate the same integral:

``euler``
    The Euler integral of the kernel turns the s-integral into an
    integral of the Fourier transform g^(y) = int g(s) e^{isy} ds,
    Vg(t) = (C/2pi) e^{-i phi t} int [u(1-u)]^{alpha/2} (1 - zu)^{-alpha/2-it} g^(y) dy
    with u = 1/(1 + e^y). Valid at complex t.
``kernel``
    Direct s-quadrature against the hypergeometric kernel.
``composition``
    The kernel written as a dilation between two Mellin-type integrals;
    needs |Im t| < alpha/2.

The inverse is the adjoint, evaluated by the kernel route.
"""

from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from imagshift.errors import DomainError, ParameterError
from imagshift.operators.catalog import vilenkin_operator, vilenkin_spec
from imagshift.operators.weights import weight_w
from imagshift.quadrature import DecayClass, QuadratureConfig, QuadResult, StripFunction, integrate_line
from imagshift.specfun.gamma import finish, gamma, log_gamma
from imagshift.specfun.hypergeometric import (SERIES_GROWTH_LIMIT, ContinuationPath, about_one_applies,
                                              hyp2F1_about_one, hyp2F1_continued, hyp_pFq,
                                              series_growth)
from imagshift.transforms.base import TransformPair, memoize_points
from imagshift.utils import config
from imagshift.utils.cache import EvaluationCache

ROUTES = ('euler', 'kernel', 'composition')
DEFAULT_ROUTE = 'euler'

LOG_TWO_PI = np.log(2.0 * np.pi)
DEGENERATION_PHIS = (1.0, 2.0, 3.0, 4.0)
# The inverse integrand oscillates like the kernel at large |t|
INVERSE_MIN_LEVELS = 10
# Height of the inner contour in the spectral image norm
NORM_CONTOUR_SHIFT = 0.5


def _real(y) -> np.ndarray:
    return np.real(np.asarray(y))


def _check(alpha: float, phi: float) -> None:
    if not alpha > 0:
        raise ParameterError("Vilenkin transform needs alpha > 0", value=alpha)
    if not phi > 0:
        raise ParameterError("Vilenkin transform needs phi > 0", value=phi)


def _argument(phi: float) -> float:
    return float(-np.expm1(-2.0 * phi))


def _log_w0(alpha: float, s: np.ndarray) -> np.ndarray:
    return 2.0 * np.real(log_gamma(0.5 * alpha + 1j * s)) - LOG_TWO_PI


def hyp_kernel(alpha: float, z: float, s, t):
    """
    2F1[alpha/2 - is, alpha/2 + it; alpha; z] broadcast over s and t.

    Each element takes the cheapest accurate route: the series about 0 while
    its terms stay moderate, the series about 1 when one of s, t is small,
    and ODE continuation otherwise.
    """
    a = 0.5 * alpha - 1j * np.asarray(s, dtype=complex)
    b = 0.5 * alpha + 1j * np.asarray(t, dtype=complex)
    a, b = np.broadcast_arrays(a, b)
    shape = a.shape
    a, b = a.ravel(), b.ravel()
    c = np.full(a.shape, alpha, dtype=complex)

    direct = (z < config.CONTINUATION_RADIUS) & (series_growth(a, b, z) <= SERIES_GROWTH_LIMIT)
    near_one = ~direct & about_one_applies(a, b, c, z)
    rest = ~direct & ~near_one

    out = np.empty(a.shape, dtype=complex)
    if np.any(direct):
        out[direct] = hyp_pFq([a[direct], b[direct]], [alpha], z)
    if np.any(near_one):
        out[near_one] = hyp2F1_about_one(a[near_one], b[near_one], alpha, z)
    if np.any(rest):
        # the default clearance would reject end points within 0.05 of 1
        path = ContinuationPath.straight(z, clearance=min(0.05, 0.5 * (1.0 - z)))
        out[rest] = hyp2F1_continued(a[rest], b[rest], alpha, path)
    return finish(out.reshape(shape), len(shape) == 0)


def fourier_transform(g: Callable, cfg: Optional[QuadratureConfig] = None,
                      cache: Optional[EvaluationCache] = None) -> Callable:
    """
    y -> int g(s) e^{isy} ds, memoized in y.

    A ``fourier`` attribute on g is used instead of quadrature.
    """
    closed = getattr(g, 'fourier', None)
    if closed is not None:
        return closed
    decay = g.decay if isinstance(g, StripFunction) else None

    def compute(y):
        y = _real(y)

        def integrand(s):
            s = _real(s)
            return g(s)[None, :] * np.exp(1j * y[:, None] * s[None, :])

        return integrate_line(integrand, cfg=cfg, decay=decay).value

    return memoize_points(compute, cache)


def _euler_route(alpha, phi, g, cfg, cache):
    z = _argument(phi)
    ghat = fourier_transform(g, cfg, cache)

    def compute(t):
        def integrand(y):
            y = _real(y)
            log_u = -np.logaddexp(0.0, y)
            log_v = -np.logaddexp(0.0, -y)
            log_tail = np.log1p(-z * np.exp(log_u))
            amplitude = np.exp(0.5 * alpha * (log_u + log_v)[None, :]
                               - (0.5 * alpha + 1j * t[:, None]) * log_tail[None, :])
            return amplitude * ghat(y)[None, :]

        integral = np.atleast_1d(integrate_line(integrand, cfg=cfg).value)
        return z ** (0.5 * alpha) / (2.0 * np.pi) * np.exp(-1j * phi * t) * integral

    return compute


def _kernel_route(alpha, phi, g, cfg):
    z = _argument(phi)
    log_prefactor = 0.5 * alpha * np.log(z) - np.real(log_gamma(alpha))

    def compute(t):
        def integrand(s):
            s = _real(s)
            kernel = hyp_kernel(alpha, z, s[None, :], t[:, None])
            return kernel * (g(s) * np.exp(_log_w0(alpha, s)))[None, :]

        integral = np.atleast_1d(integrate_line(integrand, cfg=cfg).value)
        return np.exp(log_prefactor) * np.exp(-1j * phi * t) * integral

    return compute


def _composition_route(alpha, phi, g, cfg):
    z = _argument(phi)
    inner_decay = DecayClass.exponential(0.5 * alpha)

    def compute(t):
        if np.any(np.abs(t.imag) >= 0.5 * alpha):
            raise DomainError("composition route needs |Im t| < alpha/2",
                              value=complex(t[np.abs(t.imag) >= 0.5 * alpha][0]))

        def integrand(s):
            s = _real(s)
            ss = s[None, :, None]
            tt = t[:, None, None]

            def dilation(v):
                v = _real(v)[None, None, :]
                log_value = ((0.5 * alpha + 1j * tt) * v
                             - (0.5 * alpha + 1j * ss) * np.logaddexp(0.0, v)
                             - (0.5 * alpha - 1j * ss) * np.logaddexp(0.0, v - 2.0 * phi))
                return np.exp(log_value)

            inner = integrate_line(dilation, cfg=cfg, decay=inner_decay).value
            return np.reshape(inner, (t.size, s.size)) * (g(s) * np.exp(_log_w0(alpha, s)))[None, :]

        integral = np.atleast_1d(integrate_line(integrand, cfg=cfg).value)
        norm = gamma(0.5 * alpha + 1j * t) * gamma(0.5 * alpha - 1j * t)
        return z ** (0.5 * alpha) * np.exp(-1j * phi * t) * integral / norm

    return compute


def vilenkin_forward(alpha: float, phi: float, g: Callable, route: str = DEFAULT_ROUTE,
                     cfg: Optional[QuadratureConfig] = None,
                     cache: Optional[EvaluationCache] = None, name: str = '') -> StripFunction:
    """
    Vilenkin transform of g as a lazily evaluated StripFunction.

    Args:
        alpha: Positive parameter of the weight
        phi: Positive dilation parameter
        g: Function on the line; a ``fourier`` companion speeds up the euler route
        route: 'euler', 'kernel' or 'composition'
        cfg: Quadrature configuration
        cache: Point cache for the Fourier transform of g
        name: Label of the result

    Raises:
        ParameterError: For alpha <= 0, phi <= 0 or an unknown route
    """
    _check(alpha, phi)
    if route == 'euler':
        compute = _euler_route(alpha, phi, g, cfg, cache)
    elif route == 'kernel':
        compute = _kernel_route(alpha, phi, g, cfg)
    elif route == 'composition':
        compute = _composition_route(alpha, phi, g, cfg)
    else:
        raise ParameterError(f"Unknown route: {route}", detail=f"choose from {ROUTES}")
    width = 0.5 * alpha if route == 'composition' else np.inf
    label = name or f"V[{getattr(g, 'name', '') or 'g'}]"
    return StripFunction(memoize_points(compute, None, route), half_width=width, name=label)


def vilenkin_inverse(alpha: float, phi: float, f: Callable,
                     cfg: Optional[QuadratureConfig] = None) -> StripFunction:
    """
    Adjoint transform, the inverse of the unitary Vilenkin transform.

        V*f(s) = (C e^{-pi s}/Gamma(alpha)) int f(t) 2F1[alpha/2+is, alpha/2-it; alpha; z] e^{i phi t} W(t) dt
    """
    _check(alpha, phi)
    cfg = (cfg or QuadratureConfig()).with_levels(INVERSE_MIN_LEVELS)
    z = _argument(phi)
    spec = vilenkin_spec(alpha)
    log_prefactor = 0.5 * alpha * np.log(z) - np.real(log_gamma(alpha))

    def compute(s):
        def integrand(t):
            t = _real(t)
            # 2F1[alpha/2+is, alpha/2-it] is the kernel at (-s, -t)
            kernel = hyp_kernel(alpha, z, -s[:, None], -t[None, :])
            return kernel * (f(t) * np.exp(1j * phi * t) * weight_w(spec, t))[None, :]

        integral = np.atleast_1d(integrate_line(integrand, cfg=cfg).value)
        return np.exp(log_prefactor - np.pi * s) * integral

    return StripFunction(memoize_points(compute), name=f"V*[{getattr(f, 'name', '') or 'f'}]")


def vilenkin_kernel(alpha: float, phi: float, s, t):
    """C 2F1[alpha/2 - is, alpha/2 + it; alpha; 1 - e^{-2 phi}]."""
    _check(alpha, phi)
    z = _argument(phi)
    return z ** (0.5 * alpha) * hyp_kernel(alpha, z, s, t)


def vilenkin_norm(alpha: float, g: Callable, cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Squared norm of g in L^2(R, W)."""
    spec = vilenkin_spec(alpha)
    return integrate_line(lambda t: np.abs(g(_real(t))) ** 2 * weight_w(spec, _real(t)), cfg=cfg)


def vilenkin_inner(alpha: float, f: Callable, g: Callable,
                   cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """<f, g> in L^2(R, W) for functions on the real line."""
    spec = vilenkin_spec(alpha)
    return integrate_line(lambda t: f(_real(t)) * np.conj(g(_real(t))) * weight_w(spec, _real(t)),
                          cfg=cfg)


def _log1p_exp(y) -> np.ndarray:
    """log(1 + e^y) for complex y with |Im y| < pi."""
    y = np.asarray(y, dtype=complex)
    with np.errstate(over='ignore', invalid='ignore'):
        return np.where(y.real > 0, y + np.log1p(np.exp(-y)), np.log1p(np.exp(y)))


def vilenkin_image_norm(alpha: float, phi: float, g: Callable,
                        cfg: Optional[QuadratureConfig] = None,
                        shift: float = NORM_CONTOUR_SHIFT) -> QuadResult:
    """
    Squared W-norm of Vg from the Fourier transform of g alone.

    The t-integral of |Vg|^2 W is closed,

        int W(t) e^{-itw} dt = Gamma(alpha) (2i sinh(w/2))^{-alpha},   Im w < 0,

    with w = L(y) - L(y'), L = log(1 - zu). What is left is a double
    y-integral; the inner variable runs on Im y' = shift, which keeps
    Im w < 0 and moves the diagonal singularity off the contour.

    Raises:
        ParameterError: If g has no ``fourier`` attribute or shift is
            outside (0, pi/2)
    """
    _check(alpha, phi)
    ghat = getattr(g, 'fourier', None)
    if ghat is None:
        raise ParameterError("image norm needs the Fourier transform of g",
                             value=getattr(g, 'name', None))
    if not 0 < shift < 0.5 * np.pi:
        raise ParameterError("contour shift must lie in (0, pi/2)", value=shift)
    z = _argument(phi)

    def amplitude(w):
        log_u = -_log1p_exp(w)
        log_v = -_log1p_exp(-w)
        tail = np.log1p(-z * np.exp(log_u))
        return np.exp(0.5 * alpha * (log_u + log_v - tail)), tail

    def inner(tail_y):
        def integrand(x):
            w = _real(x) + 1j * shift
            a_w, tail_w = amplitude(w)
            q = a_w * np.conj(ghat(np.conj(w)))
            omega = tail_y[:, None] - tail_w[None, :]
            return q[None, :] * np.exp(-alpha * np.log(2j * np.sinh(0.5 * omega)))

        return np.atleast_1d(integrate_line(integrand, cfg=cfg).value)

    def outer(y):
        y = _real(y)
        a_y, tail_y = amplitude(y)
        return a_y * ghat(y) * inner(tail_y)

    result = integrate_line(outer, cfg=cfg)
    factor = z ** alpha / (2.0 * np.pi) ** 2 * np.real(gamma(alpha))
    return QuadResult(float(np.real(factor * result.value)), factor * result.error, result.levels)


class AdjointCheck(NamedTuple):
    """<Vg, f>_W against <g, V*f>_W."""

    forward_side: complex
    adjoint_side: complex
    defect: float


def vilenkin_adjoint_check(alpha: float, phi: float, g: Callable, f: Callable,
                           route: str = DEFAULT_ROUTE,
                           cfg: Optional[QuadratureConfig] = None) -> AdjointCheck:
    """Relative defect of the adjoint identity for one pair of functions."""
    lhs = complex(vilenkin_inner(alpha, vilenkin_forward(alpha, phi, g, route, cfg), f, cfg).value)
    rhs = complex(vilenkin_inner(alpha, g, vilenkin_inverse(alpha, phi, f, cfg), cfg).value)
    scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    return AdjointCheck(lhs, rhs, abs(lhs - rhs) / scale)


class DegenerationReport(NamedTuple):
    """
    Kernel values as z = 1 - e^{-2 phi} approaches 1.

    ``bound`` is |A| + |B| for the two connection terms at z = 1; the
    kernel stays below it up to O(1 - z).
    """

    phis: tuple
    values: np.ndarray
    bound: float
    finite: bool
    excess: float


def vilenkin_degeneration(alpha: float, s: float, t: float,
                          phis: Sequence[float] = DEGENERATION_PHIS) -> DegenerationReport:
    """
    Smoke check of the kernel as phi grows.

    Raises:
        ParameterError: If s == t, where the z -> 1 limit is logarithmic
    """
    if s == t:
        raise ParameterError("degeneration check needs s != t", value=(s, t))
    values = np.array([vilenkin_kernel(alpha, phi, s, t) for phi in phis], dtype=complex)
    kappa = 1j * (s - t)
    connection = abs(gamma(alpha) * gamma(kappa)
                     / (gamma(0.5 * alpha + 1j * s) * gamma(0.5 * alpha - 1j * t)))
    second = abs(gamma(alpha) * gamma(-kappa)
                 / (gamma(0.5 * alpha - 1j * s) * gamma(0.5 * alpha + 1j * t)))
    bound = float(connection + second)
    finite = bool(np.all(np.isfinite(values)))
    excess = max(0.0, float(abs(values[-1])) - bound) / bound
    return DegenerationReport(tuple(phis), values, bound, finite, excess)


def vilenkin_pair(alpha: float, phi: float, route: str = DEFAULT_ROUTE,
                  cfg: Optional[QuadratureConfig] = None) -> TransformPair:
    """Vilenkin pair; 2 sinh(phi) s is carried to the Vilenkin difference operator."""
    _check(alpha, phi)
    spec = vilenkin_spec(alpha)
    scale = 2.0 * np.sinh(phi)
    return TransformPair(
        name='vilenkin',
        forward=lambda g: vilenkin_forward(alpha, phi, g, route, cfg),
        inverse=lambda f: vilenkin_inverse(alpha, phi, f, cfg),
        source_norm=lambda g, c=None: vilenkin_norm(alpha, g, c or cfg),
        target_norm=lambda f, c=None: vilenkin_norm(alpha, f, c or cfg),
        source_weight=lambda s: weight_w(spec, s),
        target_weight=lambda t: weight_w(spec, t),
        source_measure='e^{pi s}|Gamma(alpha/2+is)|^2 ds/2pi on R',
        target_measure='e^{pi t}|Gamma(alpha/2+it)|^2 dt/2pi on R',
        source_multiplication=lambda s: scale * np.asarray(s),
        multiplication_label='2 sinh(phi) s',
        target_operator=vilenkin_operator(alpha, phi),
    )
