"""
Concrete weights and difference operators.

Each constructor checks its parameter range and raises ParameterError
outside it. The resolved coefficient conventions are listed in DESIGN.md.
"""

from typing import Callable, Dict, NamedTuple, Sequence

import numpy as np

from imagshift.errors import ParameterError
from imagshift.operators.difference import DifferenceOperator, make_operator
from imagshift.operators.weights import WeightSpec

_CONJ_TOL = 1e-12

# Points at which the Meixner-Pollaczek scale and diagonal are fitted
MP_FIT_POINTS = (0.0, 1.0, -1.0, 2.0, 0.5 + 0.3j)


def _require(condition: bool, message: str, value=None) -> None:
    if not condition:
        raise ParameterError(message, value=value)


def _is_real(z: complex) -> bool:
    return abs(complex(z).imag) < _CONJ_TOL


def _conjugates(x: complex, y: complex) -> bool:
    return abs(complex(x) - np.conj(complex(y))) < _CONJ_TOL


def _positive_real_parts(values: Sequence[complex], family: str) -> None:
    for value in values:
        _require(complex(value).real > 0, f"{family} parameters need positive real parts", value)


def kl_spec() -> WeightSpec:
    """mu(s) = 1/Gamma(is), the Kontorovich-Lebedev weight."""
    return WeightSpec(0.0, (), (0.0,))


def kl_operator() -> DifferenceOperator:
    """(1/is)(f(s-i) - f(s+i)), acting on even functions."""
    return make_operator(kl_spec(), name='kl')


def wimp_spec(rho: float) -> WeightSpec:
    """mu(s) = Gamma(1/2 - rho + is)/Gamma(2is)."""
    _require(np.isreal(rho) and float(np.real(rho)) < 0.5, "Wimp operator needs real rho < 1/2", rho)
    return WeightSpec(0.0, (0.5 - float(np.real(rho)),), (), b_double=(0.0,))


def wimp_operator(rho: float) -> DifferenceOperator:
    """Operator intertwined with multiplication by 1/x under the Wimp transform."""
    return make_operator(wimp_spec(rho), name='wimp')


def vilenkin_spec(alpha: float) -> WeightSpec:
    """mu(t) = e^{pi t/2} Gamma(alpha/2 + it)."""
    _require(alpha > 0, "Vilenkin weight needs alpha > 0", alpha)
    return WeightSpec(0.5 * np.pi, (0.5 * alpha,), ())


def vilenkin_operator(alpha: float, phi: float) -> DifferenceOperator:
    """
    -i(alpha/2 - it) f(t+i) + 2t cosh(phi) f(t) + i(alpha/2 + it) f(t-i).
    """
    _require(phi > 0, "Vilenkin operator needs phi > 0", phi)
    cosh_excess = np.cosh(phi) - 1.0
    base = -make_operator(vilenkin_spec(alpha), name='vilenkin')
    return base.plus_multiplication(lambda t: 2.0 * np.asarray(t) * cosh_excess)


def mp_spec(a: float, phi: float) -> WeightSpec:
    """mu(s) = e^{(phi - pi/2)s} Gamma(a + is)."""
    _require(np.isreal(a) and a > 0, "Meixner-Pollaczek needs real a > 0", a)
    _require(0 < phi < np.pi, "Meixner-Pollaczek needs 0 < phi < pi", phi)
    return WeightSpec(phi - 0.5 * np.pi, (float(a),), ())


def mp_operator(a: float, phi: float) -> DifferenceOperator:
    """
    Meixner-Pollaczek operator with eigenvalues n sin(phi).

    up = -(i/2)e^{i phi}(a - is), diag = s cos(phi) - a sin(phi),
    down = (i/2)e^{-i phi}(a + is).
    """
    return make_operator(mp_spec(a, phi), name='mp').scaled(0.5)


class OperatorFit(NamedTuple):
    """Least-squares fit L = scale * make_operator(spec) + shift."""

    scale: complex
    shift: complex
    residual: float


def fit_mp_operator(a: float, phi: float, points: Sequence[complex] = MP_FIT_POINTS) -> OperatorFit:
    """
    Fit the scale and diagonal shift of the Meixner-Pollaczek operator.

    The conditions L P_0 = 0 and L P_1 = sin(phi) P_1 at ``points``
    overdetermine the two unknowns; the residual measures their agreement.
    """
    base = make_operator(mp_spec(a, phi))
    s = np.asarray(points, dtype=complex)
    q = 1.0 - np.exp(-2j * phi)

    def p1(x):
        return 2.0 * a * np.exp(1j * phi) * (1.0 - (a + 1j * np.asarray(x)) * q / (2.0 * a))

    rows = [np.column_stack([base.apply(lambda x: np.ones(np.shape(x)), s), np.ones(s.shape)]),
            np.column_stack([base.apply(p1, s), p1(s)])]
    rhs = [np.zeros(s.shape), np.sin(phi) * p1(s)]
    matrix = np.vstack(rows).astype(complex)
    target = np.concatenate(rhs).astype(complex)
    solution = np.linalg.lstsq(matrix, target, rcond=None)[0]
    residual = float(np.max(np.abs(matrix @ solution - target)))
    return OperatorFit(complex(solution[0]), complex(solution[1]), residual)


def hahn_spec(a: complex, b: complex) -> WeightSpec:
    """mu(s) = Gamma(a + is) Gamma(b + is)."""
    _positive_real_parts((a, b), "continuous Hahn")
    return WeightSpec(0.0, (a, b), ())


def hahn_operator(a: complex, b: complex) -> DifferenceOperator:
    return make_operator(hahn_spec(a, b), name='hahn')


def dual_hahn_spec(a: float, b: complex, c: complex) -> WeightSpec:
    """mu(s) = Gamma(a + is) Gamma(b + is) Gamma(c + is) / Gamma(2is)."""
    all_positive = all(_is_real(x) and complex(x).real > 0 for x in (a, b, c))
    conjugate_pair = (_is_real(a) and complex(a).real > 0 and complex(b).real > 0
                      and _conjugates(b, c))
    _require(all_positive or conjugate_pair,
             "continuous dual Hahn needs a, b, c > 0 or a > 0, Re b > 0, c = conj(b)", (a, b, c))
    return WeightSpec(0.0, (a, b, c), (), b_double=(0.0,))


def dual_hahn_operator(a: float, b: complex, c: complex) -> DifferenceOperator:
    return make_operator(dual_hahn_spec(a, b, c), name='dual_hahn')


def wilson_spec(a: complex, b: complex, c: complex, d: complex) -> WeightSpec:
    """mu(s) = Gamma(a + is)Gamma(b + is)Gamma(c + is)Gamma(d + is) / Gamma(2is)."""
    params = (a, b, c, d)
    _positive_real_parts(params, "Wilson")
    allowed = (all(_is_real(x) for x in params)
               or (_is_real(a) and _is_real(b) and _conjugates(d, c))
               or (_conjugates(b, a) and _conjugates(d, c)))
    _require(allowed, "Wilson parameters must be real or come in conjugate pairs", params)
    return WeightSpec(0.0, params, (), b_double=(0.0,))


def wilson_operator(a: complex, b: complex, c: complex, d: complex) -> DifferenceOperator:
    return make_operator(wilson_spec(a, b, c, d), name='wilson')


def olevsky_spec(a: float, b: float) -> WeightSpec:
    """mu(s) = Gamma(a + is) Gamma(b + is) / Gamma(2is); weight only."""
    _require(a > 0 and b > 0, "Olevsky weight needs a, b > 0", (a, b))
    return WeightSpec(0.0, (a, b), (), b_double=(0.0,))


def sec6_operator(tau: float, phi: float) -> DifferenceOperator:
    """
    (s + i/2) f(s+i) + 2(s - tau)cos(phi) f(s) + (s - i/2 - 2tau) f(s-i).

    Its eigenfunctions are the double-Mellin images of the Delta family,
    with eigenvalues 2 sin(phi)(sigma + n).
    """
    _require(np.isreal(tau), "tau must be real", tau)
    _require(0 < phi < np.pi, "operator needs 0 < phi < pi", phi)
    cos_phi = np.cos(phi)
    return DifferenceOperator(
        lambda s: np.asarray(s) + 0.5j,
        lambda s: 2.0 * (np.asarray(s) - tau) * cos_phi,
        lambda s: np.asarray(s) - 0.5j - 2.0 * tau,
        name='sec6',
    )


OPERATORS: Dict[str, Callable[..., DifferenceOperator]] = {
    'kl': kl_operator,
    'wimp': wimp_operator,
    'vilenkin': vilenkin_operator,
    'mp': mp_operator,
    'hahn': hahn_operator,
    'dual_hahn': dual_hahn_operator,
    'wilson': wilson_operator,
    'sec6': sec6_operator,
}
