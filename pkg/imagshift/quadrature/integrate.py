"""
Integration on lines, half-lines, intervals and circles.

Functions on horizontal strips travel as StripFunction values carrying
their analyticity half-width and decay class. Line integrals locate a
truncation radius on each side by sampling, then apply tanh-sinh on the
truncated interval; polynomially decaying integrands use sinh-sinh.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple, Union

import numpy as np

from imagshift.errors import DomainError, ParameterError, ToleranceError
from imagshift.quadrature.rules import DoubleExponentialIntegrator, QuadResult
from imagshift.utils import config

SUPER_EXPONENTIAL = 'super_exponential'
EXPONENTIAL = 'exponential'
POLYNOMIAL = 'polynomial'

# Truncation search: first radius, doubling cap and sample offsets
FIRST_RADIUS = 2.0
MAX_RADIUS = 2.0 ** 14
_PROBES = (1.0, 1.25, 1.5)
# Slack on the decay-implied truncation radius for polynomial prefactors
CAP_MARGIN = 1.25
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class DecayClass:
    """
    Decay of a function along the real direction.

    ``left_rate``/``right_rate`` are exponential rates for EXPONENTIAL and
    powers of |s| for POLYNOMIAL; they are unused for SUPER_EXPONENTIAL.
    """

    kind: str = SUPER_EXPONENTIAL
    left_rate: float = 0.0
    right_rate: float = 0.0

    def __post_init__(self):
        if self.kind not in (SUPER_EXPONENTIAL, EXPONENTIAL, POLYNOMIAL):
            raise ParameterError(f"Unknown decay kind: {self.kind}")
        if self.kind == EXPONENTIAL and min(self.left_rate, self.right_rate) <= 0:
            raise ParameterError("exponential rates must be positive",
                                 value=(self.left_rate, self.right_rate))
        if self.kind == POLYNOMIAL and min(self.left_rate, self.right_rate) <= 0.5:
            raise ParameterError("polynomial decay needs power > 1/2",
                                 value=(self.left_rate, self.right_rate))

    @classmethod
    def exponential(cls, rate: float, right_rate: Optional[float] = None) -> 'DecayClass':
        return cls(EXPONENTIAL, rate, rate if right_rate is None else right_rate)

    @classmethod
    def polynomial(cls, power: float, right_power: Optional[float] = None) -> 'DecayClass':
        return cls(POLYNOMIAL, power, power if right_power is None else right_power)

    def combine(self, other: 'DecayClass') -> 'DecayClass':
        """Decay class of a product of two functions."""
        if SUPER_EXPONENTIAL in (self.kind, other.kind):
            return DecayClass()
        if self.kind == other.kind:
            return DecayClass(self.kind, self.left_rate + other.left_rate,
                              self.right_rate + other.right_rate)
        exponential = self if self.kind == EXPONENTIAL else other
        return exponential


@dataclass
class StripFunction:
    """
    Function holomorphic on |Im s| <= half_width with a declared decay.

    ``eval`` must accept numpy arrays of complex points. ``window`` is the
    analyticity window (lo, hi) of Im s for Mellin images, when known.
    """

    eval: Callable
    half_width: float = np.inf
    decay: DecayClass = field(default_factory=DecayClass)
    parity: Optional[str] = None
    name: str = ''
    window: Optional[Tuple[float, float]] = None

    def __call__(self, s):
        return self.eval(s)

    def parity_defect(self, samples=None) -> float:
        """Largest sampled violation of the declared parity (0 when undeclared)."""
        if self.parity is None:
            return 0.0
        s = np.linspace(0.1, 3.0, 7) if samples is None else np.asarray(samples)
        sign = 1.0 if self.parity == 'even' else -1.0
        return float(np.max(np.abs(self.eval(-s) - sign * self.eval(s))))


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for the integrators; None fields fall back to the environment config."""

    abs_tol: Optional[float] = None
    rel_tol: Optional[float] = None
    max_levels: Optional[int] = None
    truncation_radius: Optional[float] = None

    def __post_init__(self):
        for name in ('abs_tol', 'rel_tol'):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ParameterError(f"{name} must be positive", value=value)

    def integrator(self, debug: Optional[bool] = None) -> DoubleExponentialIntegrator:
        return DoubleExponentialIntegrator(self.abs_tol, self.rel_tol, self.max_levels, debug)

    @property
    def tail_target(self) -> float:
        return 0.1 * (config.ABS_TOL if self.abs_tol is None else self.abs_tol)

    @property
    def relative(self) -> float:
        return config.REL_TOL if self.rel_tol is None else self.rel_tol

    def with_levels(self, levels: int) -> 'QuadratureConfig':
        """Copy whose refinement cap is at least ``levels``."""
        current = config.MAX_LEVELS if self.max_levels is None else self.max_levels
        return replace(self, max_levels=max(current, levels))


def _callable(f: Union[StripFunction, Callable]) -> Callable:
    return f.eval if isinstance(f, StripFunction) else f


def _peak(values) -> float:
    arr = np.abs(np.asarray(values))
    return float(np.max(arr)) if arr.size else 0.0


def _row_peak(values) -> np.ndarray:
    arr = np.abs(np.asarray(values))
    if arr.ndim == 0:
        return arr
    return np.max(arr, axis=-1) if arr.shape[-1] else np.zeros(arr.shape[:-1])


def _tail_radius(g: Callable, direction: float, target, start: float,
                 limit: float = MAX_RADIUS) -> Tuple[float, np.ndarray]:
    """
    Smallest doubling radius where |g| stays below ``target`` at three probes.

    ``target`` may hold one value per integrand row. The search stops at
    ``limit`` without raising when a limit below MAX_RADIUS is given.
    """
    radius = start
    bound = np.asarray(target)[..., None]
    while radius <= MAX_RADIUS:
        if radius >= limit:
            return limit, _row_peak(g(np.array([direction * limit], dtype=complex)))
        probes = direction * radius * np.array(_PROBES)
        values = np.abs(np.asarray(g(probes.astype(complex))))
        if np.all(np.isfinite(values)) and np.all(values <= bound):
            return radius, _row_peak(g(np.array([direction * radius], dtype=complex)))
        radius *= 2.0
    raise ToleranceError("integrand does not decay within the truncation search",
                         detail=f"direction {direction:+.0f}, radius {MAX_RADIUS:g}")


def _decay_limit(decay: DecayClass, rate: float, scale, target) -> float:
    """Radius at which the declared exponential rate brings the peak below the target."""
    if decay.kind != EXPONENTIAL:
        return MAX_RADIUS
    ratio = np.max(np.asarray(scale) / np.asarray(target))
    if not np.isfinite(ratio) or ratio <= 1.0:
        return FIRST_RADIUS
    return FIRST_RADIUS + CAP_MARGIN * float(np.log(ratio)) / rate


def integrate_line(f: Union[StripFunction, Callable], imag_offset: float = 0.0,
                   cfg: Optional[QuadratureConfig] = None,
                   decay: Optional[DecayClass] = None,
                   row_scaled: bool = False, capped: bool = False) -> QuadResult:
    """
    Integral of f(s + i*imag_offset) over real s.

    Args:
        f: StripFunction or vectorized callable
        imag_offset: Height of the horizontal line
        cfg: Quadrature configuration
        decay: Overrides the decay declared by ``f``
        row_scaled: Measure the absolute tolerances of each integrand row
            against that row's own peak, so rows of very different size are
            each resolved to the configured relative accuracy
        capped: For EXPONENTIAL decay, truncate no farther than where the
            declared rate carries the peak below the tail target; samples
            past that radius are evaluation noise of the integrand

    Returns:
        QuadResult with value, error estimate and refinement levels

    Raises:
        DomainError: If the offset leaves the strip of ``f``
        ToleranceError: If refinement or the truncation search fails
    """
    cfg = cfg or QuadratureConfig()
    if isinstance(f, StripFunction):
        if abs(imag_offset) > f.half_width + 1e-12:
            raise DomainError("line offset exceeds the strip of analyticity",
                              value=imag_offset, detail=f"half width {f.half_width}")
        decay = decay or f.decay
    decay = decay or DecayClass()
    func = _callable(f)

    def shifted(s):
        return func(np.asarray(s) + 1j * imag_offset)

    integrator = cfg.integrator()
    if decay.kind == POLYNOMIAL:
        return integrator.real_line(shifted)

    samples = shifted(np.linspace(-2.0, 2.0, 9).astype(complex))
    if row_scaled:
        scale = np.maximum(_row_peak(samples), _TINY)
        target = scale * max(cfg.tail_target, 0.1 * cfg.relative)
        integrator.abs_tol = integrator.abs_tol * scale
    else:
        scale = _peak(samples)
        target = max(cfg.tail_target, 0.1 * cfg.relative * scale)
    if cfg.truncation_radius is not None:
        right = left = cfg.truncation_radius
        tail = 0.0
    else:
        right_limit = left_limit = MAX_RADIUS
        if capped:
            right_limit = _decay_limit(decay, decay.right_rate, scale, target)
            left_limit = _decay_limit(decay, decay.left_rate, scale, target)
        right, right_edge = _tail_radius(shifted, 1.0, target, FIRST_RADIUS, right_limit)
        left, left_edge = _tail_radius(shifted, -1.0, target, FIRST_RADIUS, left_limit)
        if decay.kind == EXPONENTIAL:
            tail = right_edge / decay.right_rate + left_edge / decay.left_rate
        else:
            tail = right_edge + left_edge
    return integrator.finite(shifted, -left, right, tail=tail)


def integrate_half_line(f: Union[StripFunction, Callable],
                        cfg: Optional[QuadratureConfig] = None,
                        scale: float = 1.0) -> QuadResult:
    """
    Integral of f over (0, inf) by the exp-sinh rule.

    Endpoint singularities up to x^(-1+delta) are handled by the rule.
    """
    cfg = cfg or QuadratureConfig()
    return cfg.integrator().half_line(_callable(f), scale=scale)


def integrate_interval(f: Union[StripFunction, Callable], a: float, b: float,
                       cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """Integral of f over the finite interval [a, b] by the tanh-sinh rule."""
    cfg = cfg or QuadratureConfig()
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("interval end points must be finite", value=(a, b))
    return cfg.integrator().finite(_callable(f), a, b)


def integrate_circle(f: Callable, center: complex, radius: float,
                     cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """
    Contour integral of f around the circle |z - center| = radius.

    The periodic trapezoid rule doubles its node count until two
    successive values agree.
    """
    cfg = cfg or QuadratureConfig()
    abs_tol = config.ABS_TOL if cfg.abs_tol is None else cfg.abs_tol
    max_levels = config.MAX_LEVELS if cfg.max_levels is None else cfg.max_levels
    previous = None
    n = 16
    for level in range(max_levels + 2):
        theta = 2 * np.pi * np.arange(n) / n
        z = center + radius * np.exp(1j * theta)
        values = np.asarray(f(z), dtype=complex) * (1j * radius * np.exp(1j * theta))
        total = values.sum(axis=-1) * (2 * np.pi / n)
        if previous is not None:
            diff = np.abs(total - previous)
            if np.all(diff <= np.maximum(abs_tol, cfg.relative * np.abs(total))):
                value = complex(total) if np.ndim(total) == 0 else total
                error = float(diff) if np.ndim(diff) == 0 else diff
                return QuadResult(value, error, level)
        previous = total
        n *= 2
    raise ToleranceError("circle quadrature did not converge",
                         value=previous, detail=f"radius {radius}")


def inner_product(f: Union[StripFunction, Callable], g: Union[StripFunction, Callable],
                  w: Optional[Callable] = None, cfg: Optional[QuadratureConfig] = None,
                  imag_offset: float = 0.0,
                  support: Optional[Tuple[float, float]] = None) -> QuadResult:
    """
    Weighted inner product  int f(s) conj(g(conj s)) w(s) ds.

    On the real line this is the L^2(w) product; with ``imag_offset`` the
    same analytic integrand is taken along a shifted line. A weight with
    compact ``support`` is integrated over that interval only.
    """
    f_eval, g_eval = _callable(f), _callable(g)
    decay = DecayClass()
    if isinstance(f, StripFunction) and isinstance(g, StripFunction):
        decay = f.decay.combine(g.decay)

    def integrand(s):
        value = f_eval(s) * np.conj(g_eval(np.conj(s)))
        if w is not None:
            value = value * w(s)
        return value

    if support is not None:
        return integrate_interval(integrand, support[0], support[1], cfg)
    return integrate_line(integrand, imag_offset, cfg, decay=decay)
