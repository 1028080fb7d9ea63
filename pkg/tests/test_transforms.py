"""Tests for the index transforms and their shared checks."""

from unittest.mock import MagicMock

import mpmath
import numpy as np
import pytest

from imagshift.errors import DomainError, ParameterError, WindowError
from imagshift.quadrature import integrate_half_line, integrate_line, richardson_derivative
from imagshift.specfun import whittaker_W
from imagshift.transforms import (
    BATTERIES,
    TRANSFORMS,
    TransformPair,
    double_mellin_forward,
    double_mellin_plancherel,
    get_battery,
    intertwining_defect,
    j_alpha_forward,
    j_alpha_measure,
    kl_derivative_defect,
    kl_derivative_probe,
    kl_forward,
    kl_pair,
    memoize_points,
    mellin_forward,
    mellin_pair,
    mellin_pair_identity,
    phi_vector,
    plancherel,
    psi_vector,
    reproducing_check,
    round_trip_defect,
    vilenkin_adjoint_check,
    vilenkin_degeneration,
    vilenkin_forward,
    vilenkin_image_norm,
    vilenkin_kernel,
    vilenkin_pair,
    whittaker_difference_residual,
    wimp_forward,
    wimp_from_kl,
    wimp_pair,
)
from imagshift.transforms.batteries import gaussian, k_profile, zero_function
from imagshift.transforms.wimp import wimp_density, wimp_image_norm, wimp_inverse


def rel(value, reference):
    value, reference = np.asarray(value, dtype=complex), np.asarray(reference, dtype=complex)
    return float(np.max(np.abs(value - reference)) / np.max(np.abs(reference)))


@pytest.fixture
def e_battery():
    """e^{-x-1/x}, the first member of the default half-line battery."""
    return get_battery('half_line_default')[0]


@pytest.fixture
def identity_pair():
    """A pair whose transform is the identity on L^2(R)."""
    norm = lambda g, cfg=None: integrate_line(lambda s: np.abs(g(s)) ** 2, cfg=cfg)  # noqa: E731
    return TransformPair(
        name='identity', forward=lambda g: g, inverse=lambda f: f,
        source_norm=norm, target_norm=norm,
        source_weight=lambda s: np.ones(np.shape(s)), target_weight=lambda s: np.ones(np.shape(s)),
        source_measure='ds', target_measure='ds')


def test_battery_lookup():
    """Test that every registered battery builds and unknown ids fail."""
    for battery_id in BATTERIES:
        assert get_battery(battery_id)
    with pytest.raises(ParameterError) as exc_info:
        get_battery('nope')
    assert 'half_line_default' in str(exc_info.value)


def test_zero_battery():
    (zero,) = get_battery('zero')
    assert zero.name == 'zero'
    assert np.all(zero(np.array([0.5, 2.0])) == 0)
    assert zero_function('line').domain == 'line'


def test_battery_derivatives(e_battery):
    """Test the closed-form derivatives against extrapolated differences."""
    for g in get_battery('half_line_wimp') + [e_battery]:
        x = np.array([0.5, 1.3, 2.7])
        assert np.allclose(g.derivative(x), richardson_derivative(g, x), rtol=1e-8)


@pytest.mark.parametrize("g", [gaussian(), gaussian(shift=0.5, width=0.8), gaussian(shift=-0.3, tilt=0.4)])
def test_gaussian_fourier_companion(g):
    """Test the closed Fourier integral of the Gaussian battery."""
    y = 0.9
    numeric = integrate_line(lambda s: g(s) * np.exp(1j * s * y)).value
    assert abs(numeric - g.fourier(y)) < 1e-9


def test_k_profile_fourier_companion():
    """Test int K_{is}(c)/pi e^{isy} ds = e^{-c cosh y}."""
    g = k_profile(1.0, shift=0.4)
    y = 0.6
    numeric = integrate_line(lambda s: g(s) * np.exp(1j * s * y)).value
    assert rel(numeric, g.fourier(y)) < 1e-8


def test_k_profile_needs_positive_argument():
    with pytest.raises(ParameterError):
        k_profile(0.0)


def test_memoize_points():
    """Test that every distinct point is computed once."""
    func = MagicMock(side_effect=lambda s: 2.0 * s)
    doubled = memoize_points(func)
    assert np.allclose(doubled(np.array([1.0, 2.0, 1.0])), [2.0, 4.0, 2.0])
    assert func.call_count == 1
    assert len(func.call_args[0][0]) == 2
    assert doubled(2.0) == pytest.approx(4.0)
    assert func.call_count == 1
    assert len(doubled.cache) == 2


def test_identity_pair_checks(identity_pair, gaussian):
    """Test the shared round-trip and Plancherel checks on a trivial pair."""
    assert round_trip_defect(identity_pair, gaussian) == 0.0
    assert plancherel(identity_pair, gaussian).defect < 1e-12
    assert plancherel(identity_pair, zero_function('line')).defect == 0.0
    with pytest.raises(ValueError):
        intertwining_defect(identity_pair, [gaussian])


def test_mellin_forward_of_exponential():
    """Test M[e^{-x}](s) = Gamma(is) inside the window."""
    transform = mellin_forward(lambda x: np.exp(-x), window=(-np.inf, 0.0))
    s = 1.0 - 2.0j
    assert rel(transform(s), complex(mpmath.gamma(1j * s))) < 1e-10
    with pytest.raises(WindowError):
        transform(0.5j)


def test_mellin_window_validation():
    with pytest.raises(ParameterError):
        mellin_forward(np.exp, window=(1.0, 0.0))


@pytest.mark.parametrize("form", ["inverse", "printed"])
def test_mellin_pair_identity(form):
    """Test the Mellin pair of (1 + x)^{-alpha} in both kernel forms."""
    lhs, rhs = mellin_pair_identity(1.5, 0.8, form)
    assert rel(lhs, rhs) < 1e-8


def test_mellin_pair_identity_arguments():
    with pytest.raises(ParameterError):
        mellin_pair_identity(0.0, 0.8)
    with pytest.raises(ParameterError):
        mellin_pair_identity(1.5, 0.8, 'transposed')


def test_mellin_intertwining(e_battery):
    """Test that multiplication by x becomes the shift f(s - i)."""
    assert intertwining_defect(mellin_pair(), [e_battery], relative=True) < 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("s", [0.5, 1.5])
def test_kl_forward_matches_mpmath(e_battery, s):
    reference = mpmath.quad(lambda x: mpmath.besselk(1j * s, x) * mpmath.exp(-x - 1 / x) / x,
                            [0, 1, mpmath.inf])
    assert rel(kl_forward(e_battery)(s), complex(reference)) < 1e-9


@pytest.mark.slow
def test_kl_pair(e_battery):
    """Test unitarity, inversion and both operator images of the KL transform."""
    pair = kl_pair()
    assert plancherel(pair, e_battery).defect < 1e-5
    assert round_trip_defect(pair, e_battery) < 1e-5
    assert intertwining_defect(pair, [e_battery]) < 1e-6
    assert kl_derivative_defect(e_battery, e_battery.derivative) < 1e-6


@pytest.mark.slow
def test_kl_derivative_probe(e_battery):
    """Test that the fitted derivative image has constant 1 and sign +1."""
    probe = kl_derivative_probe(e_battery, e_battery.derivative)
    assert probe.constant == pytest.approx(1.0, abs=1e-6)
    assert probe.sign == pytest.approx(1.0, abs=1e-6)
    assert probe.residual < 1e-6


@pytest.mark.parametrize("rho", [-1.0, 0.2])
def test_whittaker_difference_equation(rho):
    assert whittaker_difference_residual(rho) < 1e-8


def test_wimp_parameter_range(e_battery):
    with pytest.raises(ParameterError):
        wimp_forward(0.5, e_battery)


@pytest.mark.slow
def test_wimp_transform(e_battery):
    """Test the rho = 0 reduction and the Wimp intertwining relation."""
    s = np.array([0.5, 1.5])
    assert rel(wimp_forward(0.0, e_battery)(s), wimp_from_kl(e_battery, s)) < 1e-8
    assert intertwining_defect(wimp_pair(0.2), [e_battery]) < 1e-6


@pytest.mark.slow
def test_wimp_pair(e_battery):
    """Test that the inverse Wimp transform recovers g and the transform is unitary."""
    pair = wimp_pair(0.2)
    assert round_trip_defect(pair, e_battery) < 1e-5
    assert plancherel(pair, e_battery).defect < 1e-5


def test_wimp_full_line_and_half_line_conventions():
    """Test that 1/4pi over R and 1/2pi over (0, inf) agree for even functions."""
    rho, x = 0.2, 1.3

    def f(s):
        s = np.asarray(s)
        return np.exp(-s * s) * (1.0 + s * s)

    half = integrate_half_line(lambda s: np.abs(f(s)) ** 2 * wimp_density(rho, s)).value
    assert wimp_image_norm(rho, f).value == pytest.approx(half, rel=1e-9)
    half_inverse = integrate_half_line(
        lambda s: f(s) * whittaker_W(rho, 1j * s, x) * wimp_density(rho, s)).value
    assert complex(wimp_inverse(rho, f)(x)) == pytest.approx(complex(half_inverse), rel=1e-8)


@pytest.mark.parametrize("phi", [0.3, 1.5])
def test_vilenkin_kernel_matches_mpmath(phi):
    """Test the kernel on both sides of the continuation radius."""
    alpha, s, t = 1.0, 0.4, 1.1
    z = 1.0 - np.exp(-2.0 * phi)
    reference = mpmath.sqrt(z) * mpmath.hyp2f1(0.5 - 0.4j, 0.5 + 1.1j, 1.0, z)
    assert rel(vilenkin_kernel(alpha, phi, s, t), complex(reference)) < 1e-8


def test_vilenkin_degeneration():
    """Test that the kernel stays finite and bounded as phi grows."""
    report = vilenkin_degeneration(1.0, 0.4, 1.1)
    assert report.finite
    assert report.excess < 1e-2
    assert report.values.shape == (4,)
    with pytest.raises(ParameterError):
        vilenkin_degeneration(1.0, 0.4, 0.4)


def test_vilenkin_kernel_large_spectral_variable():
    """Test the kernel far out in t, mixed with points the series about 0 handles."""
    alpha, phi, s = 1.0, 0.8, 0.3
    z = 1.0 - np.exp(-2.0 * phi)
    t = np.array([0.5, 40.0, 200.0])
    values = vilenkin_kernel(alpha, phi, s, t)
    assert values.shape == (3,)
    for value, ti in zip(values, t):
        reference = mpmath.sqrt(z) * mpmath.hyp2f1(0.5 - 0.3j, 0.5 + 1j * ti, 1.0, z)
        assert rel(value, complex(reference)) < 1e-8


@pytest.mark.slow
def test_vilenkin_round_trip():
    """Test that the inverse Vilenkin transform recovers g pointwise."""
    pair = vilenkin_pair(1.0, 0.8)
    assert round_trip_defect(pair, k_profile(1.0), points=[-0.5, 0.3, 1.1]) < 1e-5


@pytest.mark.slow
def test_vilenkin_intertwining_absolute():
    pair = vilenkin_pair(1.0, 0.8)
    assert intertwining_defect(pair, [k_profile(1.0)], [0.5, 1.5]) < 1e-5


@pytest.mark.slow
def test_vilenkin_image_norm_matches_direct():
    """Test the closed t-integral against quadrature of |Vg|^2 W."""
    pair = vilenkin_pair(1.0, 0.8)
    g = k_profile(1.0)
    direct = plancherel(pair, g).target
    assert vilenkin_image_norm(1.0, 0.8, g).value == pytest.approx(direct, rel=1e-6)


@pytest.mark.slow
def test_vilenkin_image_norm_gaussian():
    """Test norm preservation for a Gaussian whose image decays slowly."""
    pair = vilenkin_pair(1.0, 0.8)
    g = get_battery('vilenkin_gaussian')[0]
    source = pair.source_norm(g).value
    assert vilenkin_image_norm(1.0, 0.8, g).value == pytest.approx(source, rel=1e-5)


def test_vilenkin_image_norm_arguments():
    with pytest.raises(ParameterError):
        vilenkin_image_norm(1.0, 0.8, lambda s: np.exp(-s * s))
    with pytest.raises(ParameterError):
        vilenkin_image_norm(1.0, 0.8, k_profile(1.0), shift=2.0)


def test_vilenkin_arguments():
    g = k_profile(1.0)
    with pytest.raises(ParameterError):
        vilenkin_forward(0.0, 0.8, g)
    with pytest.raises(ParameterError):
        vilenkin_forward(1.0, -0.8, g)
    with pytest.raises(ParameterError):
        vilenkin_forward(1.0, 0.8, g, route='saddle')


def test_vilenkin_composition_strip():
    transform = vilenkin_forward(1.0, 0.8, k_profile(1.0), route='composition')
    assert transform.half_width == 0.5
    with pytest.raises(DomainError):
        transform(0.5 + 0.6j)


@pytest.mark.slow
@pytest.mark.parametrize("route", ["kernel", "composition"])
def test_vilenkin_routes_agree(route):
    g = k_profile(1.0)
    t = np.array([0.5, 1.5, 3.0])
    euler = vilenkin_forward(1.0, 0.8, g, 'euler')(t)
    assert rel(vilenkin_forward(1.0, 0.8, g, route)(t), euler) < 1e-6


@pytest.mark.slow
def test_vilenkin_adjoint():
    assert vilenkin_adjoint_check(1.0, 0.8, k_profile(1.0), gaussian()).defect < 1e-5


def test_j_alpha_measure_closed_form():
    """Test mu_J(s) = 1/cosh(pi s) at alpha = 1."""
    s = np.array([-1.2, 0.0, 0.7])
    assert np.allclose(j_alpha_measure(1.0, s), 1.0 / np.cosh(np.pi * s), rtol=1e-12)


def test_j_alpha_vectors():
    """Test the exponential and reproducing vectors and their domains."""
    assert phi_vector(1.0, 4.0)(0.0) == pytest.approx(0.5)
    assert psi_vector(2.0, 1j)(1j) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        phi_vector(1.0, 0.0)
    with pytest.raises(DomainError):
        psi_vector(1.0, 0.5)
    with pytest.raises(DomainError):
        j_alpha_forward(1.0, phi_vector(1.0, 1.0))(-1.0j)


@pytest.mark.slow
def test_reproducing_check():
    result = reproducing_check(1.0, 1.0, 2.0)
    assert result.image_defect < 1e-6
    assert result.inner_defect < 1e-6


def test_double_mellin_one_sided_support():
    """Test that a function supported on x > 0 has no second component."""
    g1, g2 = double_mellin_forward(lambda x: np.ones(np.shape(x)), support=(0.5, 2.0))
    assert g1(0.0) == pytest.approx(np.sqrt(2.0), rel=1e-10)
    assert g2(0.7) == 0


@pytest.mark.slow
def test_double_mellin_plancherel():
    assert double_mellin_plancherel(gaussian(shift=0.7)).defect < 1e-6


def test_transform_registry():
    assert set(TRANSFORMS) == {'mellin', 'kl', 'wimp', 'vilenkin'}
