"""
Orthogonal polynomial families attached to gamma-quotient weights.

Each family is evaluated by its terminating hypergeometric sum and comes
with its weight, its difference operator and the eigenvalue laws the
operator is checked against.
"""

from dataclasses import dataclass
from typing import Callable, Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from imagshift.errors import ParameterError
from imagshift.operators import catalog
from imagshift.operators.difference import DifferenceOperator
from imagshift.operators.weights import WeightSpec, weight_w
from imagshift.quadrature import QuadratureConfig, integrate_line
from imagshift.specfun.gamma import gamma, log_gamma, pochhammer
from imagshift.specfun.hypergeometric import hyp_pFq

MEIXNER_POLLACZEK = 'mp'
CONTINUOUS_HAHN = 'hahn'
CONTINUOUS_DUAL_HAHN = 'dual_hahn'
WILSON = 'wilson'

MAX_GRAM_SIZE = 12
# Products of degree-2n polynomials need finer grids than the default level cap
GRAM_MIN_LEVELS = 10
EIGEN_TOL = 1e-8
DEFAULT_EIGEN_POINTS = (0.3, 1.1, -0.7, 2.4, 0.5 + 0.3j)


def _sum_params(params) -> complex:
    return sum(complex(p) for p in params)


def _mp_eigen(f, n):
    return n * np.sin(f.params[1])


def _hahn_total(f) -> float:
    a, b = f.params
    return (a + np.conj(a) + b + np.conj(b)).real


EIGEN_LAWS: Dict[str, Dict[str, Callable]] = {
    MEIXNER_POLLACZEK: {
        'printed': _mp_eigen,
    },
    CONTINUOUS_HAHN: {
        'printed': lambda f, n: n * (n + _hahn_total(f)),
        'shifted': lambda f, n: n * (n + _hahn_total(f) - 1.0),
    },
    CONTINUOUS_DUAL_HAHN: {
        'printed': lambda f, n: float(n),
        'negated': lambda f, n: -float(n),
    },
    WILSON: {
        'printed': lambda f, n: n * (_sum_params(f.params) - 1.0),
        'quadratic': lambda f, n: n * (n + _sum_params(f.params) - 1.0),
    },
}

# Law that holds for the operators built by make_operator
RESOLVED_LAW = {
    MEIXNER_POLLACZEK: 'printed',
    CONTINUOUS_HAHN: 'shifted',
    CONTINUOUS_DUAL_HAHN: 'printed',
    WILSON: 'quadratic',
}


@dataclass(frozen=True)
class PolynomialFamily:
    """
    A parametrised polynomial family.

    ``params`` is (a, phi) for Meixner-Pollaczek, (a, b) for continuous
    Hahn, (a, b, c) for continuous dual Hahn and (a, b, c, d) for Wilson.
    """

    kind: str
    params: Tuple

    def __post_init__(self):
        if self.kind not in EIGEN_LAWS:
            raise ParameterError(f"Unknown polynomial family: {self.kind}")
        self.spec()

    @classmethod
    def meixner_pollaczek(cls, a: float, phi: float) -> 'PolynomialFamily':
        return cls(MEIXNER_POLLACZEK, (float(a), float(phi)))

    @classmethod
    def continuous_hahn(cls, a: complex, b: complex) -> 'PolynomialFamily':
        return cls(CONTINUOUS_HAHN, (complex(a), complex(b)))

    @classmethod
    def continuous_dual_hahn(cls, a: float, b: complex, c: complex) -> 'PolynomialFamily':
        return cls(CONTINUOUS_DUAL_HAHN, (complex(a), complex(b), complex(c)))

    @classmethod
    def wilson(cls, a: complex, b: complex, c: complex, d: complex) -> 'PolynomialFamily':
        return cls(WILSON, tuple(complex(p) for p in (a, b, c, d)))

    @property
    def even(self) -> bool:
        """Dual Hahn and Wilson polynomials are polynomials in s^2."""
        return self.kind in (CONTINUOUS_DUAL_HAHN, WILSON)

    def spec(self) -> WeightSpec:
        if self.kind == MEIXNER_POLLACZEK:
            return catalog.mp_spec(*self.params)
        if self.kind == CONTINUOUS_HAHN:
            return catalog.hahn_spec(*self.params)
        if self.kind == CONTINUOUS_DUAL_HAHN:
            return catalog.dual_hahn_spec(*self.params)
        return catalog.wilson_spec(*self.params)

    def operator(self) -> DifferenceOperator:
        if self.kind == MEIXNER_POLLACZEK:
            return catalog.mp_operator(*self.params)
        if self.kind == CONTINUOUS_HAHN:
            return catalog.hahn_operator(*self.params)
        if self.kind == CONTINUOUS_DUAL_HAHN:
            return catalog.dual_hahn_operator(*self.params)
        return catalog.wilson_operator(*self.params)

    def eigenvalue(self, n: int, law: Optional[str] = None) -> complex:
        law = law or RESOLVED_LAW[self.kind]
        if law not in EIGEN_LAWS[self.kind]:
            raise ParameterError(f"Unknown eigenvalue law {law!r} for {self.kind}")
        return EIGEN_LAWS[self.kind][law](self, n)

    def weight(self, s):
        return weight_w(self.spec(), s)


def _check_degree(n: int) -> None:
    if int(n) != n or n < 0:
        raise ParameterError("polynomial degree must be a nonnegative integer", value=n)


def eval_polynomial(family: PolynomialFamily, n: int, s):
    """
    Evaluate the degree-n polynomial of ``family`` at s.

    Args:
        family: Polynomial family
        n: Degree
        s: Complex scalar or array

    Returns:
        Exact terminating-sum value

    Raises:
        ParameterError: On a negative or non-integer degree
    """
    _check_degree(n)
    n = int(n)
    s = np.asarray(s, dtype=complex)
    p = family.params

    if family.kind == MEIXNER_POLLACZEK:
        a, phi = p
        z = 1.0 - np.exp(-2j * phi)
        prefactor = pochhammer(2 * a, n) / gamma(n + 1.0) * np.exp(1j * n * phi)
        value = prefactor * hyp_pFq([-n, a + 1j * s], [2 * a], z)
    elif family.kind == CONTINUOUS_HAHN:
        a, b = p
        ac, bc = np.conj(a), np.conj(b)
        prefactor = (1j ** n) * pochhammer(a + ac, n) * pochhammer(a + bc, n) / gamma(n + 1.0)
        value = prefactor * hyp_pFq([-n, n + a + ac + b + bc - 1.0, a + 1j * s],
                                    [a + ac, a + bc], 1.0)
    elif family.kind == CONTINUOUS_DUAL_HAHN:
        a, b, c = p
        prefactor = pochhammer(a + b, n) * pochhammer(a + c, n)
        value = prefactor * hyp_pFq([-n, a + 1j * s, a - 1j * s], [a + b, a + c], 1.0)
    else:
        a, b, c, d = p
        prefactor = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n)
        value = prefactor * hyp_pFq([-n, n + a + b + c + d - 1.0, a + 1j * s, a - 1j * s],
                                    [a + b, a + c, a + d], 1.0)
    value = np.asarray(value, dtype=complex) * np.ones(s.shape)
    return complex(value) if value.ndim == 0 else value


def total_mass(family: PolynomialFamily) -> float:
    """Closed-form integral of the weight over the real line."""
    p = family.params
    if family.kind == MEIXNER_POLLACZEK:
        a, phi = p
        return float(np.exp(log_gamma(2 * a).real - 2 * a * np.log(2 * np.sin(phi))))
    if family.kind == CONTINUOUS_HAHN:
        a, b = p
        ac, bc = np.conj(a), np.conj(b)
        logs = (log_gamma(a + ac) + log_gamma(a + bc) + log_gamma(b + ac) + log_gamma(b + bc)
                - log_gamma(a + ac + b + bc))
        return float(np.exp(logs).real)
    if family.kind == CONTINUOUS_DUAL_HAHN:
        a, b, c = p
        return float(2.0 * (gamma(a + b) * gamma(a + c) * gamma(b + c)).real)
    a, b, c, d = p
    pairs = (a + b, a + c, a + d, b + c, b + d, c + d)
    logs = sum(log_gamma(x) for x in pairs) - log_gamma(a + b + c + d)
    return float(2.0 * np.exp(logs).real)


class NormResult(NamedTuple):
    value: float
    error: float


NORM_LAWS = ('resolved', 'printed')


def mp_norm_closed_form(a: float, phi: float, n: int, law: str = 'resolved') -> float:
    """
    Squared norm of the Meixner-Pollaczek polynomial of degree n.

    'resolved' is Gamma(n+2a)/((2 sin phi)^{2a} n!); 'printed' has the
    power 2a replaced by 1 and agrees with it only at a = 1/2.
    """
    if law not in NORM_LAWS:
        raise ParameterError(f"Unknown norm law: {law}")
    power = 2.0 * a if law == 'resolved' else 1.0
    log_value = log_gamma(n + 2.0 * a).real - log_gamma(n + 1.0).real - power * np.log(2 * np.sin(phi))
    return float(np.exp(log_value))


def _poly_matrix(family: PolynomialFamily, degrees: Sequence[int], s) -> np.ndarray:
    return np.stack([eval_polynomial(family, n, s) for n in degrees])


def norm_squared(family: PolynomialFamily, n: int, cfg: Optional[QuadratureConfig] = None,
                 law: str = 'resolved') -> NormResult:
    """
    Squared L^2(w) norm of the degree-n polynomial.

    Meixner-Pollaczek norms come from the closed form; the other families
    are integrated numerically.
    """
    _check_degree(n)
    if family.kind == MEIXNER_POLLACZEK:
        return NormResult(mp_norm_closed_form(*family.params, n, law=law), 0.0)
    spec = family.spec()

    def integrand(s):
        return np.abs(eval_polynomial(family, n, s)) ** 2 * weight_w(spec, s)

    result = integrate_line(integrand, cfg=cfg)
    return NormResult(float(np.real(result.value)), float(result.error))


class GramResult(NamedTuple):
    matrix: np.ndarray
    error: np.ndarray


def gram_matrix(family: PolynomialFamily, size: int,
                cfg: Optional[QuadratureConfig] = None) -> GramResult:
    """
    Gram matrix G[m, n] = <p_m, p_n>_w for m, n < size.

    The polynomials are first scaled to unit numerical norm so that one
    vector-valued quadrature resolves every entry to the same relative
    accuracy.

    The refinement cap is raised to at least GRAM_MIN_LEVELS.

    Raises:
        ParameterError: If size is not between 1 and 12
    """
    if not 1 <= size <= MAX_GRAM_SIZE:
        raise ParameterError(f"Gram size must be between 1 and {MAX_GRAM_SIZE}", value=size)
    cfg = (cfg or QuadratureConfig()).with_levels(GRAM_MIN_LEVELS)
    spec = family.spec()
    degrees = list(range(size))
    scales = np.sqrt([norm_squared(family, n, cfg).value if family.kind != MEIXNER_POLLACZEK
                      else mp_norm_closed_form(*family.params, n) for n in degrees])

    def integrand(s):
        q = _poly_matrix(family, degrees, s) / scales[:, None]
        return q[:, None, :] * np.conj(q[None, :, :]) * weight_w(spec, s)

    result = integrate_line(integrand, cfg=cfg)
    outer = np.outer(scales, scales)
    return GramResult(np.asarray(result.value) * outer, np.asarray(result.error) * outer)


def eigen_defect(family: PolynomialFamily, n: int, sample_points=DEFAULT_EIGEN_POINTS,
                 law: Optional[str] = None, relative: bool = False) -> float:
    """
    Max over sample points of |L p_n(s) - lambda_n p_n(s)|.

    Args:
        family: Polynomial family
        n: Degree
        sample_points: Points avoiding the coefficient poles
        law: Eigenvalue law (default: the resolved one)
        relative: Divide by the largest of 1, |L p_n| and |lambda_n p_n|

    Raises:
        PoleError: If a sample point hits a coefficient pole
    """
    _check_degree(n)
    s = np.asarray(sample_points, dtype=complex)
    poly = lambda x: eval_polynomial(family, n, x)  # noqa: E731
    lhs = np.atleast_1d(family.operator().apply(poly, s))
    rhs = family.eigenvalue(n, law) * np.atleast_1d(poly(s))
    defect = float(np.max(np.abs(lhs - rhs)))
    if relative:
        defect /= max(1.0, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return defect


class LawResolution(NamedTuple):
    """Eigenvalue law selected by the sampled defects of every candidate."""

    law: Optional[str]
    defects: Dict[str, float]


def resolve_eigen_law(family: PolynomialFamily, degrees: Sequence[int] = (1, 2),
                      sample_points=DEFAULT_EIGEN_POINTS, tol: float = EIGEN_TOL) -> LawResolution:
    """
    Pick the candidate eigenvalue law whose relative defect stays below tol.

    Returns the first passing candidate (None if none passes) with every
    candidate's worst defect.
    """
    defects = {}
    for name in EIGEN_LAWS[family.kind]:
        defects[name] = max(eigen_defect(family, n, sample_points, law=name, relative=True)
                            for n in degrees)
    passing = [name for name, value in defects.items() if value < tol]
    return LawResolution(passing[0] if passing else None, defects)


FAMILIES: Dict[str, Callable[..., PolynomialFamily]] = {
    MEIXNER_POLLACZEK: PolynomialFamily.meixner_pollaczek,
    CONTINUOUS_HAHN: PolynomialFamily.continuous_hahn,
    CONTINUOUS_DUAL_HAHN: PolynomialFamily.continuous_dual_hahn,
    WILSON: PolynomialFamily.wilson,
}
