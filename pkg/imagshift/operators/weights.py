"""
Gamma-quotient weights and the shift coefficients they induce.

A WeightSpec describes

    mu(s) = e^{cs} prod Gamma(a_k + is) / (prod Gamma(b_l + is) prod Gamma(beta_j + 2is))

with nu(s) = conj(mu(conj s)) and the weight w = mu nu / 2pi, which is
e^{2cs}|...|^2 / 2pi on the real line.
"""

from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from imagshift.errors import DomainError, ParameterError, PoleError
from imagshift.specfun.gamma import as_complex_array, finish, log_gamma, log_rgamma
from imagshift.utils import config

LOG_TWO_PI = np.log(2.0 * np.pi)

# Sample grid of the decay check
DECAY_REAL_PARTS = (10.0, 20.0, 40.0)
DECAY_IMAG_PARTS = (-1.0, -0.5, 0.0, 0.5, 1.0)
DECAY_EPSILON = 0.01

LAW_SAMPLES = 50
LAW_TOL = 1e-10


def _complex_tuple(values: Sequence) -> Tuple[complex, ...]:
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class WeightSpec:
    """
    Parameters of a gamma-quotient weight.

    ``a`` are the numerator shifts, ``b`` the denominator shifts and
    ``b_double`` the shifts of denominator factors Gamma(beta + 2is).
    """

    c: float = 0.0
    a: Tuple[complex, ...] = ()
    b: Tuple[complex, ...] = ()
    b_double: Tuple[complex, ...] = field(default=())

    def __post_init__(self):
        if not np.isfinite(self.c) or np.iscomplexobj(self.c):
            raise ParameterError("weight exponent c must be a finite real", value=self.c)
        object.__setattr__(self, 'c', float(self.c))
        object.__setattr__(self, 'a', _complex_tuple(self.a))
        object.__setattr__(self, 'b', _complex_tuple(self.b))
        object.__setattr__(self, 'b_double', _complex_tuple(self.b_double))

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def degree(self) -> int:
        """Polynomial growth order of A(s) and B(s) along the real line."""
        return max(self.m - self.n - 2 * len(self.b_double), 0)

    def validate(self) -> Tuple[bool, Optional[str]]:
        """
        Check the hypothesis under which the shift operators are symmetric.

        Returns:
            Tuple of (is_valid, error_message)
        """
        bad = [a for a in self.a if a.real <= 0]
        if bad:
            return False, f"numerator shifts need Re a > 0, got {bad}"
        return True, None


def _check_poles(z: np.ndarray, what: str) -> None:
    nearest = np.round(z.real)
    close = (nearest <= 0) & (np.abs(z - nearest) < config.POLE_DISTANCE)
    if np.any(close):
        raise PoleError(f"{what} is at a pole of gamma", value=z[close].ravel()[0])


def log_mu(spec: WeightSpec, s):
    """log mu(s) on a branch that is continuous away from the poles."""
    arr, scalar = as_complex_array(s)
    out = spec.c * arr
    for a in spec.a:
        z = a + 1j * arr
        _check_poles(z, "numerator argument")
        out = out + log_gamma(z)
    for b in spec.b:
        out = out + log_rgamma(b + 1j * arr)
    for beta in spec.b_double:
        out = out + log_rgamma(beta + 2j * arr)
    return finish(out, scalar)


def mu(spec: WeightSpec, s):
    """
    Evaluate mu(s).

    Raises:
        PoleError: If a numerator gamma is within the pole distance of a pole
    """
    with np.errstate(over='ignore', under='ignore'):
        return np.exp(log_mu(spec, s))


def nu(spec: WeightSpec, s):
    """Evaluate nu(s) = conj(mu(conj s))."""
    return np.conj(mu(spec, np.conj(s)))


def weight_w(spec: WeightSpec, s):
    """
    Weight w(s) = e^{2cs}|prod Gamma(a+is) / prod Gamma(b+is)|^2 / 2pi on the real line.

    Args:
        spec: Weight parameters
        s: Real scalar or array (complex dtype with zero imaginary part is accepted)

    Returns:
        Nonnegative weight values

    Raises:
        DomainError: If s is not real
        PoleError: If a numerator gamma hits a pole
    """
    arr = np.asarray(s)
    if np.iscomplexobj(arr):
        if np.any(np.abs(arr.imag) > 0):
            raise DomainError("weight_w is defined on the real line", value=s)
        arr = arr.real
    log_w = 2.0 * np.real(log_mu(spec, arr.astype(complex))) - LOG_TWO_PI
    with np.errstate(under='ignore'):
        out = np.exp(log_w)
    return float(out) if out.ndim == 0 else out


def weight_analytic(spec: WeightSpec, s):
    """Holomorphic continuation mu(s)nu(s)/2pi of the weight off the real line."""
    arr, scalar = as_complex_array(s)
    value = log_mu(spec, arr) + np.conj(log_mu(spec, np.conj(arr))) - LOG_TWO_PI
    with np.errstate(under='ignore', over='ignore'):
        return finish(np.exp(value), scalar)


def _product(factors: List[np.ndarray], divisors: List[np.ndarray], prefactor: complex):
    out = prefactor
    for factor in factors:
        out = out * factor
    for divisor in divisors:
        if np.any(np.abs(divisor) < config.POLE_DISTANCE):
            raise PoleError("shift coefficient has a pole here")
        out = out / divisor
    return out


def coeff_A(spec: WeightSpec, s, form: str = 'product'):
    """
    Coefficient A(s) = nu(s+i)/nu(s) of f(s+i).

    Args:
        spec: Weight parameters
        s: Complex scalar or array
        form: 'product' for the closed product or 'quotient' for the ratio of nu values

    Raises:
        PoleError: Within the pole distance of a pole of A
    """
    arr, scalar = as_complex_array(s)
    if form == 'quotient':
        log_nu = lambda z: np.conj(log_mu(spec, np.conj(z)))  # noqa: E731
        return finish(np.exp(log_nu(arr + 1j) - log_nu(arr)), scalar)
    if form != 'product':
        raise ParameterError(f"Unknown coefficient form: {form}")
    factors = [np.conj(a) - 1j * arr for a in spec.a]
    divisors = [np.conj(b) - 1j * arr for b in spec.b]
    for beta in spec.b_double:
        divisors += [np.conj(beta) - 2j * arr, np.conj(beta) + 1.0 - 2j * arr]
    return finish(_product(factors, divisors, np.exp(1j * spec.c)) * np.ones(arr.shape), scalar)


def coeff_B(spec: WeightSpec, s, form: str = 'product'):
    """Coefficient B(s) = mu(s-i)/mu(s) of f(s-i); see :func:`coeff_A`."""
    arr, scalar = as_complex_array(s)
    if form == 'quotient':
        return finish(np.exp(log_mu(spec, arr - 1j) - log_mu(spec, arr)), scalar)
    if form != 'product':
        raise ParameterError(f"Unknown coefficient form: {form}")
    factors = [a + 1j * arr for a in spec.a]
    divisors = [b + 1j * arr for b in spec.b]
    for beta in spec.b_double:
        divisors += [beta + 2j * arr, beta + 1.0 + 2j * arr]
    return finish(_product(factors, divisors, np.exp(-1j * spec.c)) * np.ones(arr.shape), scalar)


@dataclass(frozen=True)
class AsymptoticEnvelope:
    """
    Leading behaviour C |s|^power e^{exp_rate s - abs_rate |s| - pi sgn(s) skew} of w.

    ``right_rate``/``left_rate`` are the resulting exponential decay rates
    towards +inf and -inf.
    """

    power: float
    exp_rate: float
    abs_rate: float = 0.0
    log_constant: float = 0.0
    skew: float = 0.0

    @property
    def right_rate(self) -> float:
        return self.abs_rate - self.exp_rate

    @property
    def left_rate(self) -> float:
        return self.abs_rate + self.exp_rate

    def log_value(self, s):
        s = np.asarray(s, dtype=float)
        return (self.log_constant + self.power * np.log(np.abs(s)) + self.exp_rate * s
                - self.abs_rate * np.abs(s) - np.pi * np.sign(s) * self.skew)

    def __call__(self, s):
        return np.exp(self.log_value(s))


def asymptotic_envelope(spec: WeightSpec) -> AsymptoticEnvelope:
    """Stirling envelope of weight_w(spec, s) as |s| -> inf."""
    n_double = len(spec.b_double)
    power = (sum(2 * a.real - 1 for a in spec.a) - sum(2 * b.real - 1 for b in spec.b)
             - sum(2 * beta.real - 1 for beta in spec.b_double))
    log_constant = ((spec.m - spec.n - n_double - 1) * LOG_TWO_PI
                    - sum(2 * beta.real - 1 for beta in spec.b_double) * np.log(2.0))
    skew = (sum(a.imag for a in spec.a) - sum(b.imag for b in spec.b)
            - sum(beta.imag for beta in spec.b_double))
    return AsymptoticEnvelope(
        power=float(power),
        exp_rate=2.0 * spec.c,
        abs_rate=np.pi * (spec.m - spec.n - 2 * n_double),
        log_constant=float(log_constant),
        skew=float(skew),
    )


class DecayReport(NamedTuple):
    """Outcome of a sampled decay check; failures are (s, |f(s)|, bound)."""

    passed: bool
    failures: List[Tuple[complex, float, float]]


def is_w_decreasing(f: Callable, spec: WeightSpec, margin: float = 1.0,
                    epsilon: float = DECAY_EPSILON) -> DecayReport:
    """
    Sampled check of |f(s)| <= margin Psi(s)^{-1/2} |s|^{-deg-1/2-eps} on |Im s| <= 1.

    Psi is the asymptotic envelope of the weight and deg the growth order of
    the shift coefficients.
    """
    envelope = asymptotic_envelope(spec)
    re = np.array([sign * x for x in DECAY_REAL_PARTS for sign in (1.0, -1.0)])
    s = (re[:, None] + 1j * np.array(DECAY_IMAG_PARTS)[None, :]).ravel()
    with np.errstate(over='ignore', invalid='ignore'):
        values = np.abs(np.asarray(f(s), dtype=complex) * np.ones(s.shape))
    log_bound = (np.log(margin) - 0.5 * envelope.log_value(s.real)
                 - (spec.degree + 0.5 + epsilon) * np.log(np.abs(s)))
    failures = []
    for point, value, lb in zip(s, values, log_bound):
        if not np.isfinite(value) or (value > 0 and np.log(value) > lb):
            failures.append((complex(point), float(value), float(np.exp(lb))))
    return DecayReport(not failures, failures)


def check_shift_symmetry_law(L: Callable, samples: int = LAW_SAMPLES, tol: float = LAW_TOL,
                             seed: int = 0) -> bool:
    """
    Test L(s) = conj(L(conj s - i)) at random points of the strip -1 <= Im s <= 0.

    This is the condition for L(s)f(s+i) to be formally symmetric in L^2(ds).
    Points where L raises PoleError or is not finite are skipped.
    """
    rng = np.random.default_rng(seed)
    points = rng.uniform(-3.0, 3.0, samples) + 1j * rng.uniform(-1.0, 0.0, samples)
    checked = 0
    for s in points:
        try:
            lhs = complex(L(s))
            rhs = np.conj(complex(L(np.conj(s) - 1j)))
        except PoleError:
            continue
        if not (np.isfinite(lhs) and np.isfinite(rhs)):
            continue
        checked += 1
        if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
            return False
    return checked > 0
