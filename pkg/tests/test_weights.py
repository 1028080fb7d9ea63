"""Tests for gamma-quotient weights and their shift coefficients."""

import numpy as np
import pytest

from imagshift.errors import DomainError, ParameterError, PoleError
from imagshift.operators import (
    WeightSpec,
    asymptotic_envelope,
    check_shift_symmetry_law,
    coeff_A,
    coeff_B,
    hahn_spec,
    is_w_decreasing,
    kl_spec,
    mp_spec,
    mu,
    nu,
    weight_analytic,
    weight_w,
    wilson_spec,
)


@pytest.fixture
def mp():
    return mp_spec(1.0, np.pi / 3)


def test_weight_spec_normalizes_parameters():
    """Test that shifts are stored as complex tuples."""
    spec = WeightSpec(0, [0.5, 1], [2])
    assert spec.a == (0.5 + 0j, 1 + 0j)
    assert spec.b == (2 + 0j,)
    assert isinstance(spec.c, float)
    assert (spec.m, spec.n) == (2, 1)


def test_weight_spec_rejects_bad_exponent():
    with pytest.raises(ParameterError):
        WeightSpec(np.inf)


def test_weight_spec_validate():
    assert WeightSpec(0.0, (0.5,)).validate() == (True, None)
    is_valid, message = WeightSpec(0.0, (-0.5, 1.0)).validate()
    assert not is_valid
    assert "Re a > 0" in message


def test_degree():
    """Test the growth order of the shift coefficients."""
    assert hahn_spec(0.6, 0.8).degree == 2
    assert kl_spec().degree == 0
    assert wilson_spec(0.5, 0.6, 0.7, 0.8).degree == 2


def test_kl_weight_closed_form():
    """Test |1/Gamma(is)|^2 / 2pi = s sinh(pi s) / 2pi^2."""
    s = np.array([0.3, 1.0, 2.5])
    assert np.allclose(weight_w(kl_spec(), s), s * np.sinh(np.pi * s) / (2 * np.pi ** 2), rtol=1e-12)


def test_weight_is_mu_nu_on_the_line(mp):
    """Test w = mu nu / 2pi for real s and its holomorphic continuation."""
    s = np.array([-1.5, 0.0, 0.7])
    assert np.allclose(weight_w(mp, s), (mu(mp, s) * nu(mp, s)).real / (2 * np.pi), rtol=1e-12)
    assert np.allclose(weight_analytic(mp, s), weight_w(mp, s), rtol=1e-12)


def test_weight_requires_real_argument(mp):
    with pytest.raises(DomainError):
        weight_w(mp, 0.5 + 0.1j)


def test_mu_at_pole():
    with pytest.raises(PoleError):
        mu(WeightSpec(0.0, (0.5,)), 0.5j)


@pytest.mark.parametrize("s", [0.3 + 0.1j, -1.2 - 0.4j, 2.0])
def test_coefficient_forms_agree(s):
    """Test that the closed products equal the ratios of mu and nu."""
    spec = hahn_spec(0.6 + 0.2j, 0.8)
    assert coeff_A(spec, s) == pytest.approx(coeff_A(spec, s, form='quotient'), rel=1e-11)
    assert coeff_B(spec, s) == pytest.approx(coeff_B(spec, s, form='quotient'), rel=1e-11)


def test_coefficient_unknown_form(mp):
    with pytest.raises(ParameterError):
        coeff_A(mp, 0.5, form='ratio')


def test_coefficient_pole():
    """Test the pole of A(s) = i/s of the Kontorovich-Lebedev weight at 0."""
    assert coeff_A(kl_spec(), 2.0) == pytest.approx(0.5j)
    with pytest.raises(PoleError):
        coeff_A(kl_spec(), 0.0)


def test_asymptotic_envelope(mp):
    """Test the Stirling envelope of the Meixner-Pollaczek weight."""
    envelope = asymptotic_envelope(mp)
    assert envelope.power == pytest.approx(1.0)
    assert envelope.right_rate == pytest.approx(np.pi + np.pi / 3)
    assert envelope.left_rate == pytest.approx(np.pi - np.pi / 3)
    for s in (40.0, -40.0):
        assert weight_w(mp, s) / envelope(s) == pytest.approx(1.0, rel=0.05)


def test_is_w_decreasing(mp, gaussian):
    assert is_w_decreasing(gaussian, mp).passed
    report = is_w_decreasing(lambda s: np.exp(np.asarray(s) ** 2), mp)
    assert not report.passed
    assert report.failures


def test_shift_symmetry_law():
    """Test L(s) = conj(L(conj s - i)) for a symmetric law and a broken one."""
    law = lambda s: (1.0 - 1j * s) * (1j * s)  # noqa: E731
    assert check_shift_symmetry_law(law)
    assert not check_shift_symmetry_law(lambda s: s + 0j)
