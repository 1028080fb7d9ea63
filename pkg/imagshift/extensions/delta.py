"""
The Delta family on the real line and the first-order operator it diagonalizes.

    Delta_sigma(x) = (1 + x e^{i phi})^{-1/2-i tau-sigma} (1 + x e^{-i phi})^{-1/2-i tau+sigma}
                   = R^{-1/2-i tau} e^{-i sigma theta},   R = 1 + 2x cos(phi) + x^2

with theta(x) = 2 arg(1 + x e^{i phi}) followed continuously from theta(0) = 0.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from imagshift.errors import ParameterError
from imagshift.quadrature import DecayClass, QuadratureConfig, integrate_interval, integrate_line
from imagshift.quadrature.differentiate import richardson_derivative

DELTA_SHIFTS = (-2, -1, 0, 1, 2)
D_POINTS = (-1.0, 0.0, 2.0)
S_MAP_ORDERS = (0, 1, 2)

# |Delta_m conj(Delta_n)| = 1/R decays like x^-2
GRAM_DECAY = DecayClass.polynomial(2.0)


@dataclass(frozen=True)
class ExtensionParams:
    """Parameters tau, sigma and phi of the Delta family; phi lies in (0, pi)."""

    tau: float
    sigma: complex
    phi: float

    def __post_init__(self):
        if not np.isreal(self.tau):
            raise ParameterError("tau must be real", value=self.tau)
        if not (np.isreal(self.phi) and 0.0 < float(np.real(self.phi)) < np.pi):
            raise ParameterError("phi must lie strictly inside (0, pi)", value=self.phi)

    def shifted(self, n: int) -> 'ExtensionParams':
        return ExtensionParams(self.tau, self.sigma + n, self.phi)

    def eigenvalue(self, n: int = 0) -> float:
        """2 sin(phi)(sigma + n)."""
        return 2.0 * np.sin(self.phi) * (self.sigma + n)


def _radius(phi: float, x: np.ndarray) -> np.ndarray:
    return 1.0 + 2.0 * x * np.cos(phi) + x * x


def theta_substitution(phi: float, x, wrap: bool = False):
    """
    theta with e^{i theta} = (1 + e^{i phi} x)/(1 + e^{-i phi} x).

    The continuous branch runs from 2phi - 2pi at x = -inf through 0 at
    x = 0 to 2phi at x = +inf; ``wrap`` reduces it to [0, 2pi).
    """
    x = np.asarray(x, dtype=float)
    theta = 2.0 * np.arctan2(x * np.sin(phi), 1.0 + x * np.cos(phi))
    if wrap:
        theta = np.mod(theta, 2.0 * np.pi)
    return theta[()] if theta.ndim == 0 else theta


def theta_derivative(phi: float, x):
    """d theta/dx = 2 sin(phi)/((1 + e^{i phi} x)(1 + e^{-i phi} x))."""
    x = np.asarray(x, dtype=float)
    value = 2.0 * np.sin(phi) / _radius(phi, x)
    return value[()] if value.ndim == 0 else value


def delta_eval(params: ExtensionParams, sigma_shift: float, x):
    """Delta_{sigma + sigma_shift}(x) on the branch with Delta(0) = 1."""
    x = np.asarray(x, dtype=float)
    sigma = params.sigma + sigma_shift
    log_r = np.log(_radius(params.phi, x))
    value = np.exp((-0.5 - 1j * params.tau) * log_r - 1j * sigma * theta_substitution(params.phi, x))
    return complex(value) if value.ndim == 0 else value


def delta_derivative(params: ExtensionParams, sigma_shift: float, x):
    """Closed-form x-derivative of Delta_{sigma + sigma_shift}."""
    x = np.asarray(x, dtype=float)
    sigma = params.sigma + sigma_shift
    radius = _radius(params.phi, x)
    log_slope = ((-0.5 - 1j * params.tau) * (2.0 * x + 2.0 * np.cos(params.phi)) / radius
                 - 1j * sigma * 2.0 * np.sin(params.phi) / radius)
    value = delta_eval(params, sigma_shift, x) * log_slope
    return complex(value) if np.ndim(value) == 0 else value


class DeltaFunction:
    """Delta_{sigma + shift} as a callable carrying its analytic derivative."""

    def __init__(self, params: ExtensionParams, shift: float = 0):
        self.params = params
        self.shift = shift
        self.name = f"delta[{shift:+g}]"

    def __call__(self, x):
        return delta_eval(self.params, self.shift, x)

    def derivative(self, x):
        return delta_derivative(self.params, self.shift, x)


def d_operator_apply(params: ExtensionParams, f: Callable, x,
                     derivative: Optional[Callable] = None, step: float = 1e-2):
    """
    Df(x) = i(x^2 + 2cos(phi)x + 1) f'(x) + i(1 + 2i tau)(x + cos(phi)) f(x).

    f' comes from ``derivative``, else from a ``derivative`` attribute of
    f, else from extrapolated central differences.

    Raises:
        StepError: If the extrapolated derivative does not stabilise
    """
    x = np.asarray(x, dtype=float)
    derivative = derivative or getattr(f, 'derivative', None)
    if derivative is not None:
        slope = np.asarray(derivative(x), dtype=complex)
    else:
        slope = np.asarray(richardson_derivative(lambda y: np.asarray(f(y), dtype=complex), x, step))
    value = (1j * _radius(params.phi, x) * slope
             + 1j * (1.0 + 2j * params.tau) * (x + np.cos(params.phi)) * np.asarray(f(x), dtype=complex))
    return complex(value) if value.ndim == 0 else value


def d_eigen_residual(params: ExtensionParams, points: Sequence[float] = D_POINTS,
                     numeric: bool = False) -> float:
    """
    Largest |D Delta_sigma - 2 sin(phi) sigma Delta_sigma| relative to max(1, |Delta_sigma|).

    With ``numeric`` the derivative is taken by finite differences.
    """
    x = np.asarray(points, dtype=float)
    delta = DeltaFunction(params)
    f = (lambda y: delta(y)) if numeric else delta
    lhs = np.atleast_1d(d_operator_apply(params, f, x))
    rhs = params.eigenvalue() * np.atleast_1d(delta(x))
    return float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))))


def s_map(params: ExtensionParams, f_theta: Callable) -> Callable:
    """
    Unitary substitution L^2(0, 2pi) -> L^2(R).

        (Sf)(x) = f(theta(x)) theta'(x)^{1/2 + i tau}
    """

    def mapped(x):
        x = np.asarray(x, dtype=float)
        slope = theta_derivative(params.phi, x)
        return np.asarray(f_theta(theta_substitution(params.phi, x))) * np.exp(
            (0.5 + 1j * params.tau) * np.log(slope))

    return mapped


def s_map_defect(params: ExtensionParams, n: int, points: Sequence[float] = D_POINTS) -> float:
    """Largest |S e^{-i(sigma+n)theta} - (2 sin phi)^{1/2+i tau} Delta_{sigma+n}| at ``points``."""
    x = np.asarray(points, dtype=float)
    sigma = params.sigma + n
    image = s_map(params, lambda theta: np.exp(-1j * sigma * theta))(x)
    factor = np.exp((0.5 + 1j * params.tau) * np.log(2.0 * np.sin(params.phi)))
    return float(np.max(np.abs(image - factor * np.atleast_1d(delta_eval(params, n, x)))))


class UnitarityCheck(NamedTuple):
    """Squared norms before and after the substitution map."""

    circle: float
    line: float
    defect: float


def s_map_unitarity(params: ExtensionParams, n: int,
                    cfg: Optional[QuadratureConfig] = None) -> UnitarityCheck:
    """Compare int_0^{2pi} |e^{-in theta}|^2 d theta with int_R |S e^{-in theta}|^2 dx."""
    phase = lambda theta: np.exp(-1j * n * np.asarray(theta))  # noqa: E731
    circle = float(np.real(integrate_interval(lambda t: np.abs(phase(np.real(t))) ** 2,
                                              0.0, 2.0 * np.pi, cfg).value))
    mapped = s_map(params, phase)
    line = float(np.real(integrate_line(lambda x: np.abs(mapped(np.real(x))) ** 2,
                                        cfg=cfg, decay=GRAM_DECAY).value))
    return UnitarityCheck(circle, line, abs(circle - line) / circle)


class DeltaGram(NamedTuple):
    """Gram matrix of the Delta family in L^2(R, dx/2pi) with its diagonal defect."""

    shifts: tuple
    matrix: np.ndarray
    off_diagonal: float
    diagonal: float


def delta_gram(params: ExtensionParams, shifts: Sequence[int] = DELTA_SHIFTS,
               cfg: Optional[QuadratureConfig] = None) -> DeltaGram:
    """
    Gram matrix <Delta_{sigma+m}, Delta_{sigma+n}> in L^2(R, dx/2pi).

    The diagonal is 1/(2 sin phi); ``off_diagonal`` is the largest
    off-diagonal modulus relative to the largest diagonal entry.
    """
    shifts = tuple(shifts)

    def integrand(x):
        x = np.real(x)
        values = np.stack([np.atleast_1d(delta_eval(params, k, x)) for k in shifts])
        return values[:, None, :] * np.conj(values)[None, :, :] / (2.0 * np.pi)

    matrix = np.asarray(integrate_line(integrand, cfg=cfg, decay=GRAM_DECAY).value, dtype=complex)
    diagonal = float(np.max(np.abs(np.diag(matrix))))
    off = np.abs(matrix - np.diag(np.diag(matrix)))
    return DeltaGram(shifts, matrix, float(np.max(off)) / diagonal, diagonal)
