"""
Mellin-type twist J onto holomorphic functions in the upper half-plane.

    JF(z) = (2^alpha/(2pi Gamma(alpha))) int f(s) (z/i)^{-alpha/2-is} |Gamma(alpha/2+is)|^2 ds

J is unitary from L^2(R, mu_J), mu_J(s) = 2^alpha |Gamma(alpha/2+is)|^2/(2pi Gamma(alpha)),
onto the weighted Bergman-type space with reproducing vectors
psi_w(z) = ((z - conj w)/(2i))^{-alpha}. The exponentials
phi_a(s) = a^{-alpha/2+is} are carried to psi_{ia}.
"""

from typing import Callable, NamedTuple, Optional

import numpy as np

from imagshift.errors import DomainError, ParameterError
from imagshift.quadrature import DecayClass, QuadratureConfig, QuadResult, integrate_line
from imagshift.specfun.gamma import finish, log_gamma

LOG_TWO = np.log(2.0)
LOG_TWO_PI = np.log(2.0 * np.pi)

# Imaginary offset of the inversion line, below pi/2
ROTATION = 1.0


def _check(alpha: float) -> None:
    if not alpha > 0:
        raise ParameterError("J transform needs alpha > 0", value=alpha)


def _real(y) -> np.ndarray:
    return np.real(np.asarray(y))


def _log_density(alpha: float, s) -> np.ndarray:
    return (alpha * LOG_TWO + 2.0 * np.real(log_gamma(0.5 * alpha + 1j * np.asarray(s)))
            - LOG_TWO_PI - np.real(log_gamma(alpha)))


def j_alpha_measure(alpha: float, s):
    """mu_J(s) = 2^alpha |Gamma(alpha/2 + is)|^2 / (2pi Gamma(alpha))."""
    _check(alpha)
    return np.exp(_log_density(alpha, _real(s)))


def phi_vector(alpha: float, a: float) -> Callable:
    """s -> a^{-alpha/2 + is} for a > 0."""
    _check(alpha)
    if not a > 0:
        raise ParameterError("phi vector needs a > 0", value=a)
    log_a = np.log(a)
    return lambda s: np.exp((-0.5 * alpha + 1j * np.asarray(s)) * log_a)


def psi_vector(alpha: float, w: complex) -> Callable:
    """Reproducing vector z -> ((z - conj w)/(2i))^{-alpha} for Im w > 0."""
    _check(alpha)
    if not complex(w).imag > 0:
        raise DomainError("reproducing vector needs Im w > 0", value=w)
    w_bar = np.conj(complex(w))
    return lambda z: np.exp(-alpha * np.log((np.asarray(z, dtype=complex) - w_bar) / 2j))


def j_alpha_forward(alpha: float, f: Callable, cfg: Optional[QuadratureConfig] = None) -> Callable:
    """
    J f as a vectorized function on the upper half-plane.

    The power (z/i)^{-alpha/2-is} uses the principal logarithm, real on
    the positive imaginary axis.

    Raises:
        DomainError: On evaluation at Im z <= 0
    """
    _check(alpha)

    def evaluate(z):
        arr = np.asarray(z, dtype=complex)
        flat = np.atleast_1d(arr).ravel()
        if np.any(flat.imag <= 0):
            raise DomainError("J f lives on the upper half-plane", value=complex(flat[flat.imag <= 0][0]))
        log_z = np.log(flat / 1j)

        def integrand(s):
            s = _real(s)
            power = (-0.5 * alpha - 1j * s[None, :]) * log_z[:, None]
            return f(s)[None, :] * np.exp(power + _log_density(alpha, s)[None, :])

        value = np.atleast_1d(integrate_line(integrand, cfg=cfg).value)
        return finish(value.reshape(arr.shape), arr.ndim == 0)

    return evaluate


def j_alpha_inverse(alpha: float, F: Callable, cfg: Optional[QuadratureConfig] = None) -> Callable:
    """
    Recover f from F near the imaginary axis.

        f(s) = Gamma(alpha)/(2^alpha |Gamma(alpha/2+is)|^2) int F(i e^v) e^{v(alpha/2+is)} dv

    The v-line is moved to Im v = ROTATION sign(s), which removes most of
    the cancellation behind the e^{-pi|s|} size of the integral.
    """
    _check(alpha)
    decay = DecayClass.exponential(0.5 * alpha)

    def evaluate(s):
        arr = np.asarray(s, dtype=float)
        flat = np.atleast_1d(arr).ravel()
        tilt = 1j * ROTATION * np.sign(flat)[:, None]

        def integrand(v):
            v = _real(v)[None, :] + tilt
            return F(1j * np.exp(v)) * np.exp((0.5 * alpha + 1j * flat[:, None]) * v)

        value = np.atleast_1d(integrate_line(integrand, cfg=cfg, decay=decay).value)
        scale = np.exp(np.real(log_gamma(alpha)) - alpha * LOG_TWO
                       - 2.0 * np.real(log_gamma(0.5 * alpha + 1j * flat)))
        return finish((scale * value).reshape(arr.shape), arr.ndim == 0)

    return evaluate


def j_alpha_source_inner(alpha: float, f: Callable, g: Callable,
                         cfg: Optional[QuadratureConfig] = None) -> QuadResult:
    """<f, g> in L^2(R, mu_J)."""
    _check(alpha)
    return integrate_line(
        lambda s: f(_real(s)) * np.conj(g(_real(s))) * np.exp(_log_density(alpha, _real(s))), cfg=cfg)


def j_alpha_inner(alpha: float, F: Callable, G: Callable,
                  cfg: Optional[QuadratureConfig] = None) -> complex:
    """<F, G> in the image space, pulled back through the inverse transform."""
    value = j_alpha_source_inner(alpha, j_alpha_inverse(alpha, F, cfg),
                                 j_alpha_inverse(alpha, G, cfg), cfg).value
    return complex(value)


def reproducing_inner(alpha: float, a: float, b: float) -> float:
    """Closed form <psi_{ia}, psi_{ib}> = <phi_a, phi_b> = ((a + b)/2)^{-alpha}."""
    return (0.5 * (a + b)) ** (-alpha)


class ReproducingCheck(NamedTuple):
    """Defects of the two reproducing identities at one parameter point."""

    image_defect: float
    inner_defect: float


def reproducing_check(alpha: float, a: float, b: float, z: complex = 2j,
                      cfg: Optional[QuadratureConfig] = None) -> ReproducingCheck:
    """
    |J phi_a(z) - psi_{ia}(z)| and |<psi_{ia}, psi_{ib}> - ((a+b)/2)^{-alpha}|.

    The inner product is taken in the image space through the inverse.
    """
    image = complex(j_alpha_forward(alpha, phi_vector(alpha, a), cfg)(z))
    expected = complex(psi_vector(alpha, 1j * a)(z))
    inner = j_alpha_inner(alpha, psi_vector(alpha, 1j * a), psi_vector(alpha, 1j * b), cfg)
    return ReproducingCheck(abs(image - expected), abs(inner - reproducing_inner(alpha, a, b)))
