"""
Named verification suites.

A suite is a list of checks. Each check measures one nonnegative defect
of an identity the library is supposed to satisfy and compares it with a
tolerance. Reports are sorted by check id, so the order in which checks
finish does not matter.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from imagshift.errors import NumericalError, ParameterError
from imagshift.extensions import (
    ExtensionParams,
    d_eigen_residual,
    delta_gram,
    psi_gram,
    psi_transform_defect,
    residue_ratio,
    s_map_defect,
    s_map_unitarity,
    sec6_eigen_defect,
)
from imagshift.extensions.delta import S_MAP_ORDERS
from imagshift.extensions.psi import PSI_ORDERS
from imagshift.operators import catalog
from imagshift.operators.difference import symmetry_defect
from imagshift.polynomials import (
    FAMILIES,
    RESOLVED_LAW,
    PolynomialFamily,
    eigen_defect,
    gram_matrix,
    mp_norm_closed_form,
    resolve_eigen_law,
)
from imagshift.quadrature import QuadratureConfig, richardson_derivative, richardson_second_derivative
from imagshift.specfun import ContinuationPath, hyp2F1_continued, hyp_pFq, log_gamma, macdonald_K, whittaker_W
from imagshift.transforms import (
    get_battery,
    intertwining_defect,
    kl_derivative_defect,
    kl_pair,
    mellin_pair_identity,
    plancherel,
    reproducing_check,
    round_trip_defect,
    vilenkin_adjoint_check,
    vilenkin_degeneration,
    vilenkin_forward,
    vilenkin_image_norm,
    vilenkin_pair,
    whittaker_difference_residual,
    wimp_forward,
    wimp_from_kl,
    wimp_pair,
)
from imagshift.transforms.base import DEFAULT_TARGET_POINTS
from imagshift.transforms.batteries import gaussian, k_profile
from imagshift.transforms.double_mellin import double_mellin_plancherel
from imagshift.utils import config
from imagshift.verify.report import CheckResult, SuiteReport, finite_or_none

Outcome = Union[float, Tuple[float, str]]

ALL = 'all'
SUITE_NAMES = ('specfun', 'symmetry', 'kl', 'wimp', 'vilenkin', 'polynomials', 'sec6')

# Parameter points shared by the operator and polynomial checks
MP_PARAMS = (1.0, np.pi / 3)
HAHN_PARAMS = (0.6, 0.8)
DUAL_HAHN_PARAMS = (0.5, 0.7, 1.2)
WILSON_PARAMS = (0.5, 0.6, 0.7, 0.8)
WIMP_RHO = 0.2
VILENKIN_ALPHA = 1.0
VILENKIN_PHI = 0.8
MAX_DEGREE = 6

DELTA_PARAMS = ExtensionParams(0.3, 0.2, 1.2)
PSI_PARAMS = ExtensionParams(0.2, 0.3, 1.2)
PSI_EIGEN_PARAMS = ExtensionParams(0.0, 0.25, np.pi / 2)
D_GRID = ((0.0, 0.3, -0.5), (0.0, 0.4, -1.1), (0.5, 1.2, 2.5))


@dataclass(frozen=True)
class Check:
    """
    A named defect measurement.

    ``run`` returns the defect, or the defect with a note for the report.
    """

    id: str
    anchor: str
    tol: float
    run: Callable[[], Outcome]


@dataclass(frozen=True)
class SuiteOptions:
    """Inputs shared by the checks of one run."""

    cfg: Optional[QuadratureConfig] = None
    battery: Optional[str] = None


def _relative(value, reference) -> float:
    return float(np.max(np.abs(np.asarray(value) - np.asarray(reference)))
                 / max(float(np.max(np.abs(reference))), np.finfo(float).tiny))


# specfun

def _gamma_recurrence() -> float:
    re = np.linspace(0.1, 10.0, 12)
    im = np.linspace(-10.0, 10.0, 11)
    z = re[:, None] + 1j * im[None, :]
    ratio = np.exp(log_gamma(z + 1.0) - log_gamma(z) - np.log(z))
    return float(np.max(np.abs(ratio - 1.0)))


def _gamma_asymptotic() -> float:
    a, s = 1.0, 40.0
    log_ratio = (log_gamma(a + 1j * s).real
                 - 0.5 * np.log(2.0 * np.pi) - (a - 0.5) * np.log(s) + 0.5 * np.pi * s)
    return abs(float(np.expm1(log_ratio)))


def _k_grid() -> Tuple[np.ndarray, np.ndarray]:
    nu = 1j * np.array([0.5, 1.0, 2.5])[:, None]
    x = np.array([0.5, 1.0, 5.0])[None, :]
    return nu, x


def _macdonald_recurrence() -> float:
    nu, x = _k_grid()
    below, above = macdonald_K(nu - 1.0, x), macdonald_K(nu + 1.0, x)
    residual = below - above + 2.0 * nu / x * macdonald_K(nu, x)
    return float(np.max(np.abs(residual) / (np.abs(below) + np.abs(above))))


def _macdonald_derivative() -> Outcome:
    nu, x = _k_grid()
    below, above = macdonald_K(nu - 1.0, x), macdonald_K(nu + 1.0, x)
    worst = 0.0
    for i in range(nu.shape[0]):
        order = complex(nu[i, 0])
        slope = richardson_derivative(lambda y: macdonald_K(order, y), x[0])
        residual = np.abs(below[i] + above[i] + 2.0 * slope) / (np.abs(below[i]) + np.abs(above[i]))
        worst = max(worst, float(np.max(residual)))
    return worst, 'K_{v-1} + K_{v+1} = -2 dK_v/dx'


def _whittaker_bridge() -> float:
    nu = 1j * np.array([0.9, 0.25, 0.5, 1.2, 2.0])
    x = np.array([1.1, 0.7, 2.5, 4.0, 1.5])
    direct = macdonald_K(nu, x)
    bridge = np.sqrt(np.pi / (2.0 * x)) * whittaker_W(0.0, nu, 2.0 * x)
    return _relative(bridge, direct)


def _whittaker_ode() -> float:
    worst = 0.0
    sigma = 0.7j
    for rho in (-0.5, 0.2):
        x = np.array([1.0, 2.5])
        f = np.asarray(whittaker_W(rho, sigma, x))
        second = richardson_second_derivative(lambda y: whittaker_W(rho, sigma, y), x)
        terms = (x * x * second, -0.25 * x * x * f, rho * x * f, -(sigma ** 2 - 0.25) * f)
        residual = np.abs(sum(terms)) / sum(np.abs(t) for t in terms)
        worst = max(worst, float(np.max(residual)))
    return worst


def _hyp2f1_continuation() -> float:
    a, b, c = np.array([0.5, 0.3 + 0.2j, -0.4]), np.array([0.25, 1.1, 0.7j]), np.array([1.5, 2.2, 1.3])
    inside = hyp2F1_continued(a, b, c, ContinuationPath.straight(0.4))
    series = np.array([hyp_pFq([ai, bi], [ci], 0.4) for ai, bi, ci in zip(a, b, c)])
    # the real segment to 1.3 would cross z = 1
    terminating = hyp2F1_continued(-1.0, 0.7, 1.9, ContinuationPath.polyline([0.65 + 0.5j, 1.3]))
    return max(_relative(inside, series), _relative(terminating, 1.0 - 1.3 * 0.7 / 1.9))


def _kummer_barnes() -> float:
    kummer = whittaker_W(-1.0, 0.3j, 1.0, method='kummer')
    barnes = whittaker_W(-1.0, 0.3j, 1.0, method='barnes')
    return _relative(kummer, barnes)


def specfun_checks(options: SuiteOptions) -> List[Check]:
    return [
        Check('specfun.gamma_recurrence', 'Gamma(z+1) = z Gamma(z)', 1e-12, _gamma_recurrence),
        Check('specfun.gamma_asymptotic', '|Gamma(a+is)| asymptotics', 1e-2, _gamma_asymptotic),
        Check('specfun.macdonald_recurrence', 'K_{v-1} - K_{v+1} = -(2v/x) K_v', 1e-9,
              _macdonald_recurrence),
        Check('specfun.macdonald_derivative', 'K_{v-1} + K_{v+1} = -2 K_v\'', 1e-7, _macdonald_derivative),
        Check('specfun.whittaker_bridge', 'K_v(x) = sqrt(pi/2x) W_{0,v}(2x)', 1e-9, _whittaker_bridge),
        Check('specfun.whittaker_ode', 'Whittaker equation', 1e-6, _whittaker_ode),
        Check('specfun.hyp2f1_continuation', '2F1 continuation against the series', 1e-10,
              _hyp2f1_continuation),
        Check('specfun.kummer_barnes', 'Kummer and Barnes integrals of W', 1e-8, _kummer_barnes),
    ]


# symmetry

def _symmetry(op_factory: Callable, even: bool, options: SuiteOptions) -> Outcome:
    if even:
        f, g = gaussian().as_strip(), gaussian(width=0.7).as_strip()
    else:
        f, g = gaussian(shift=0.5, width=0.8).as_strip(), gaussian(shift=-0.3, tilt=0.4).as_strip()
    result = symmetry_defect(op_factory(), f, g, cfg=options.cfg)
    return result.defect / result.error, f"defect {result.defect:.3e}, error estimate {result.error:.3e}"


SYMMETRY_OPERATORS = (
    ('mp', partial(catalog.mp_operator, *MP_PARAMS), False),
    ('hahn', partial(catalog.hahn_operator, *HAHN_PARAMS), False),
    ('dual_hahn', partial(catalog.dual_hahn_operator, *DUAL_HAHN_PARAMS), True),
    ('wilson', partial(catalog.wilson_operator, *WILSON_PARAMS), True),
    ('kl', catalog.kl_operator, True),
    ('wimp', partial(catalog.wimp_operator, WIMP_RHO), True),
)


def symmetry_checks(options: SuiteOptions) -> List[Check]:
    # defect in units of the quadrature error estimate
    return [Check(f"symmetry.{name}", f"<Lf, g> = <f, Lg> for the {name} operator", 10.0,
                  partial(_symmetry, factory, even, options))
            for name, factory, even in SYMMETRY_OPERATORS]


# kl

def _half_line_battery(options: SuiteOptions, default: str):
    return get_battery(options.battery or default)


def _worst_plancherel(pair, battery, cfg) -> float:
    return max(plancherel(pair, g, cfg).defect for g in battery)


def _kl_derivative(battery, cfg) -> Outcome:
    worst = max(kl_derivative_defect(g, g.derivative, cfg=cfg) for g in battery if g.derivative)
    return worst, 'constant 1, sign +1'


def kl_checks(options: SuiteOptions) -> List[Check]:
    battery = _half_line_battery(options, 'half_line_default')
    pair = kl_pair(options.cfg)
    return [
        Check('kl.plancherel', 'KL transform is unitary', 1e-5,
              partial(_worst_plancherel, pair, battery, options.cfg)),
        Check('kl.round_trip', 'KL inverse recovers g', 1e-5,
              lambda: max(round_trip_defect(pair, g) for g in battery)),
        Check('kl.intertwining', 'K((2/x)g) = (1/is)(Kg(s-i) - Kg(s+i))', 1e-6,
              lambda: intertwining_defect(pair, battery, DEFAULT_TARGET_POINTS)),
        Check('kl.derivative_image', 'K((d/dx - 1/x)g) = (Kg(s+i) + Kg(s-i))/2', 1e-6,
              partial(_kl_derivative, battery, options.cfg)),
    ]


# wimp

def _wimp_reduction(battery, cfg) -> float:
    s = np.asarray(DEFAULT_TARGET_POINTS, dtype=complex)
    return max(_relative(wimp_forward(0.0, g, cfg)(s), wimp_from_kl(g, s, cfg)) for g in battery)


def wimp_checks(options: SuiteOptions) -> List[Check]:
    battery = _half_line_battery(options, 'half_line_wimp')
    pair = wimp_pair(WIMP_RHO, options.cfg)
    return [
        Check('wimp.difference_equation', 'Whittaker difference equation in the second index', 1e-8,
              lambda: max(whittaker_difference_residual(rho) for rho in (-1.0, WIMP_RHO))),
        Check('wimp.intertwining', 'W(g/x) = L W g', 1e-6,
              lambda: intertwining_defect(pair, battery, DEFAULT_TARGET_POINTS)),
        Check('wimp.kl_reduction', 'rho = 0 transform through the KL transform', 1e-8,
              partial(_wimp_reduction, battery, options.cfg)),
        Check('wimp.plancherel', 'Wimp transform is unitary', 1e-5,
              partial(_worst_plancherel, pair, battery, options.cfg)),
        Check('wimp.round_trip', 'Wimp inverse recovers g', 1e-5,
              lambda: max(round_trip_defect(pair, g) for g in battery)),
    ]


# vilenkin

def _vilenkin_routes(route: str, cfg) -> float:
    g = k_profile(1.0)
    t = np.asarray(DEFAULT_TARGET_POINTS, dtype=float)
    euler = vilenkin_forward(VILENKIN_ALPHA, VILENKIN_PHI, g, 'euler', cfg)(t)
    other = vilenkin_forward(VILENKIN_ALPHA, VILENKIN_PHI, g, route, cfg)(t)
    return _relative(other, euler)


def _vilenkin_adjoint(cfg) -> float:
    return vilenkin_adjoint_check(VILENKIN_ALPHA, VILENKIN_PHI, k_profile(1.0), gaussian(), cfg=cfg).defect


def _vilenkin_degeneration() -> Outcome:
    report = vilenkin_degeneration(VILENKIN_ALPHA, 0.4, 1.1)
    if not report.finite:
        return float('inf'), 'kernel is not finite'
    return report.excess, f"bound {report.bound:.6g}"


def _mellin_pair() -> float:
    worst = 0.0
    for form in ('inverse', 'printed'):
        lhs, rhs = mellin_pair_identity(1.5, 0.8, form)
        worst = max(worst, _relative(lhs, rhs))
    return worst


def _vilenkin_norm(pair, battery, cfg) -> Outcome:
    direct = _worst_plancherel(pair, battery, cfg)
    spectral = 0.0
    for g in get_battery('vilenkin_gaussian'):
        source = float(np.real(pair.source_norm(g, cfg).value))
        image = vilenkin_image_norm(VILENKIN_ALPHA, VILENKIN_PHI, g, cfg).value
        spectral = max(spectral, abs(source - image) / source)
    return max(direct, spectral), f'direct {direct:.2e}, spectral {spectral:.2e}'


def vilenkin_checks(options: SuiteOptions) -> List[Check]:
    battery = get_battery('vilenkin_default')
    pair = vilenkin_pair(VILENKIN_ALPHA, VILENKIN_PHI, cfg=options.cfg)
    reproducing = {}

    def reproducing_defect(field: str) -> float:
        if not reproducing:
            reproducing['result'] = reproducing_check(1.0, 1.0, 2.0, cfg=options.cfg)
        return getattr(reproducing['result'], field)

    return [
        Check('vilenkin.norm', 'Vilenkin transform preserves the norm', 1e-5,
              partial(_vilenkin_norm, pair, battery, options.cfg)),
        Check('vilenkin.round_trip', 'Vilenkin inverse recovers g', 1e-5,
              lambda: max(round_trip_defect(pair, g) for g in battery)),
        Check('vilenkin.intertwining', 'L V g = V(2 sinh(phi) s g)', 1e-5,
              lambda: intertwining_defect(pair, battery, DEFAULT_TARGET_POINTS)),
        Check('vilenkin.kernel_route', 'kernel route agrees with the euler route', 1e-6,
              partial(_vilenkin_routes, 'kernel', options.cfg)),
        Check('vilenkin.composition', 'composition route agrees with the euler route', 1e-6,
              partial(_vilenkin_routes, 'composition', options.cfg)),
        Check('vilenkin.adjoint', '<Vg, f> = <g, V*f>', 1e-5, partial(_vilenkin_adjoint, options.cfg)),
        Check('vilenkin.degeneration', 'kernel bounded as z -> 1', 1e-2, _vilenkin_degeneration),
        Check('vilenkin.j_alpha_image', 'J phi_a = psi_{ia}', 1e-6,
              partial(reproducing_defect, 'image_defect')),
        Check('vilenkin.j_alpha_inner', '<psi_{ia}, psi_{ib}> = ((a+b)/2)^{-alpha}', 1e-6,
              partial(reproducing_defect, 'inner_defect')),
        Check('vilenkin.mellin_pair', 'Mellin pair of (1+x)^{-alpha}', 1e-8, _mellin_pair),
    ]


# polynomials

POLYNOMIAL_FAMILIES = (
    ('mp', MP_PARAMS),
    ('hahn', HAHN_PARAMS),
    ('dual_hahn', DUAL_HAHN_PARAMS),
    ('wilson', WILSON_PARAMS),
)


def _family(kind: str, params: Sequence) -> PolynomialFamily:
    return FAMILIES[kind](*params)


def _polynomial_eigen(kind: str, params: Sequence) -> Outcome:
    family = _family(kind, params)
    worst = max(eigen_defect(family, n, relative=True) for n in range(MAX_DEGREE + 1))
    return worst, f"law {RESOLVED_LAW[kind]}"


def _polynomial_law(kind: str, params: Sequence) -> Outcome:
    resolution = resolve_eigen_law(_family(kind, params))
    note = ', '.join(f"{name} {value:.3e}" for name, value in resolution.defects.items())
    if resolution.law != RESOLVED_LAW[kind]:
        note += f"; selected {resolution.law}"
    return resolution.defects[RESOLVED_LAW[kind]], note


def _mp_fit() -> Outcome:
    fit = catalog.fit_mp_operator(*MP_PARAMS)
    defect = max(abs(fit.scale - 0.5), abs(fit.shift), fit.residual)
    return defect, f"scale {fit.scale.real:.12g}, shift {abs(fit.shift):.3e}"


def _polynomial_gram(kind: str, params: Sequence, cfg) -> float:
    matrix = gram_matrix(_family(kind, params), MAX_DEGREE + 1, cfg).matrix
    diagonal = np.abs(np.diag(matrix))
    off = np.abs(matrix - np.diag(np.diag(matrix)))
    return float(np.max(off / np.sqrt(np.outer(diagonal, diagonal))))


def _mp_gram(cfg):
    return gram_matrix(PolynomialFamily.meixner_pollaczek(*MP_PARAMS), MAX_DEGREE + 1, cfg).matrix


def mp_checks(options: SuiteOptions) -> List[Check]:
    gram = {}

    def matrix():
        if 'matrix' not in gram:
            gram['matrix'] = _mp_gram(options.cfg)
        return gram['matrix']

    def norms() -> float:
        expected = np.array([mp_norm_closed_form(*MP_PARAMS, n) for n in range(MAX_DEGREE + 1)])
        return float(np.max(np.abs(np.diag(matrix()).real - expected) / expected))

    def orthogonality() -> float:
        m = matrix()
        off = np.abs(m - np.diag(np.diag(m)))
        return float(np.max(off) / np.max(np.abs(np.diag(m))))

    return [
        Check('polynomials.mp_fit', 'fitted Meixner-Pollaczek scale and diagonal', 1e-10, _mp_fit),
        Check('polynomials.mp_norms', 'Gamma(n+2a)/((2 sin phi)^{2a} n!)', 1e-8, norms),
        Check('polynomials.mp_orthogonality', 'Meixner-Pollaczek orthogonality', 1e-8, orthogonality),
    ]


def polynomial_checks(options: SuiteOptions) -> List[Check]:
    checks = []
    for kind, params in POLYNOMIAL_FAMILIES:
        checks.append(Check(f"polynomials.eigen.{kind}", f"{kind} eigen-relation, n <= {MAX_DEGREE}",
                            1e-9, partial(_polynomial_eigen, kind, params)))
        checks.append(Check(f"polynomials.law.{kind}", f"{kind} eigenvalue law", 1e-8,
                            partial(_polynomial_law, kind, params)))
        checks.append(Check(f"polynomials.gram.{kind}", f"{kind} orthogonality, n <= {MAX_DEGREE}",
                            1e-8, partial(_polynomial_gram, kind, params, options.cfg)))
    return checks + mp_checks(options)


# sec6

def _delta_gram(cfg) -> Outcome:
    result = delta_gram(DELTA_PARAMS, cfg=cfg)
    expected = 1.0 / (2.0 * np.sin(DELTA_PARAMS.phi))
    diagonal = float(np.max(np.abs(np.diag(result.matrix).real - expected))) / expected
    return max(result.off_diagonal, diagonal), f"off-diagonal {result.off_diagonal:.3e}"


def _d_eigen() -> float:
    taus, sigmas, phis = D_GRID
    return max(d_eigen_residual(ExtensionParams(tau, sigma, phi), numeric=True)
               for tau in taus for sigma in sigmas for phi in phis)


def _psi_gram(cfg) -> Outcome:
    result = psi_gram(PSI_PARAMS, cfg=cfg)
    expected = 2.0 * np.pi ** 2 / np.sin(PSI_PARAMS.phi)
    diagonal = float(np.max(np.abs(np.diag(result.matrix).real - expected))) / expected
    return max(result.off_diagonal, diagonal), f"off-diagonal {result.off_diagonal:.3e}"


def _double_mellin(cfg) -> float:
    return max(double_mellin_plancherel(f, cfg=cfg).defect for f in (gaussian(), gaussian(shift=0.7)))


def sec6_checks(options: SuiteOptions) -> List[Check]:
    cfg = options.cfg
    return [
        Check('sec6.delta_gram', 'Delta family is orthogonal', 1e-8, partial(_delta_gram, cfg)),
        Check('sec6.d_eigen', 'D Delta_sigma = 2 sin(phi) sigma Delta_sigma', 1e-6, _d_eigen),
        Check('sec6.s_map_identity', 'S e^{-i sigma theta} = (2 sin phi)^{1/2+i tau} Delta_sigma', 1e-10,
              lambda: max(s_map_defect(DELTA_PARAMS, n) for n in S_MAP_ORDERS)),
        Check('sec6.s_map_unitarity', 'S is unitary', 1e-6,
              lambda: max(s_map_unitarity(DELTA_PARAMS, n, cfg).defect for n in S_MAP_ORDERS)),
        Check('sec6.psi_gram', 'Psi images are orthogonal with norm 2pi^2/sin(phi)', 1e-5, partial(_psi_gram, cfg)),
        Check('sec6.psi_eigen', 'L Psi = 2 sin(phi)(sigma+n) Psi', 1e-5,
              lambda: max(sec6_eigen_defect(PSI_EIGEN_PARAMS, n) for n in PSI_ORDERS)),
        Check('sec6.psi_transform', 'Psi images are the double-Mellin images of Delta', 1e-5,
              lambda: psi_transform_defect(PSI_PARAMS, 0, cfg=cfg)),
        Check('sec6.double_mellin_plancherel', 'double Mellin transform is unitary', 1e-6,
              partial(_double_mellin, cfg)),
        Check('sec6.residue_ratio', 'residue ratios of Psi at the Beta poles', 1e-6,
              lambda: residue_ratio(PSI_PARAMS, cfg=cfg).defect),
    ]


SUITES: Dict[str, Callable[[SuiteOptions], List[Check]]] = {
    'specfun': specfun_checks,
    'symmetry': symmetry_checks,
    'kl': kl_checks,
    'wimp': wimp_checks,
    'vilenkin': vilenkin_checks,
    'polynomials': polynomial_checks,
    'sec6': sec6_checks,
}


def effective_tolerance(check: Check, tolerances: Optional[Dict[str, float]] = None,
                        tol_scale: float = 1.0, tol: Optional[float] = None) -> float:
    """
    Tolerance a check is judged against.

    ``tol`` replaces every tolerance; otherwise a per-id override or the
    built-in value is multiplied by ``tol_scale``.
    """
    if tol is not None:
        return float(tol)
    base = (tolerances or {}).get(check.id, check.tol)
    return float(base) * tol_scale


class SuiteRunner:
    """Runs the checks of a suite and assembles the report."""

    def __init__(self, debug: Optional[bool] = None, workers: Optional[int] = None,
                 cfg: Optional[QuadratureConfig] = None, battery: Optional[str] = None):
        self.debug = config.DEBUG if debug is None else debug
        self.workers = max(1, config.VERIFY_WORKERS if workers is None else workers)
        self.options = SuiteOptions(cfg, battery)

    def checks(self, suite: str) -> List[Check]:
        """
        Checks of a suite; 'all' is the union of every suite.

        Raises:
            ParameterError: For an unknown suite
        """
        if suite == ALL:
            return [check for name in SUITE_NAMES for check in SUITES[name](self.options)]
        if suite not in SUITES:
            raise ParameterError(f"Unknown suite: {suite}",
                                 detail=f"choose from {', '.join(SUITE_NAMES + (ALL,))}")
        return SUITES[suite](self.options)

    def _execute(self, check: Check, tol: float, timings: bool) -> CheckResult:
        if self.debug:
            print(f"Running {check.id} (tol {tol:.1e})")
        start = time.perf_counter()
        note = error = ''
        try:
            outcome = check.run()
            defect, note = outcome if isinstance(outcome, tuple) else (outcome, '')
            defect = finite_or_none(defect)
            if defect is None:
                error = 'defect is not finite'
        except NumericalError as e:
            defect, error = None, str(e)
        elapsed = int(round(1000.0 * (time.perf_counter() - start))) if timings else 0
        passed = defect is not None and defect <= tol
        if self.debug:
            print(f"  {check.id}: defect {defect}, {'pass' if passed else 'FAIL'}")
        return CheckResult(check.id, check.anchor, defect, tol, passed, elapsed, note, error)

    def run(self, suite: str, tolerances: Optional[Dict[str, float]] = None,
            tol_scale: float = 1.0, tol: Optional[float] = None,
            timings: bool = False) -> SuiteReport:
        """
        Run a suite.

        Args:
            suite: Suite name or 'all'
            tolerances: Per-check tolerance overrides by id
            tol_scale: Factor applied to the built-in or overridden tolerances
            tol: Single tolerance replacing all others
            timings: Record wall time per check; otherwise ms is 0

        Returns:
            SuiteReport sorted by check id
        """
        checks = self.checks(suite)
        jobs = [(check, effective_tolerance(check, tolerances, tol_scale, tol)) for check in checks]
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(lambda job: self._execute(*job, timings), jobs))
        else:
            results = [self._execute(check, check_tol, timings) for check, check_tol in jobs]
        return SuiteReport(suite, results)
