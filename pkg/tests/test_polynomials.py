"""Tests for the hypergeometric orthogonal polynomial families."""

import numpy as np
import pytest

from imagshift.errors import ParameterError
from imagshift.polynomials import (
    EIGEN_LAWS,
    FAMILIES,
    RESOLVED_LAW,
    PolynomialFamily,
    eigen_defect,
    eval_polynomial,
    gram_matrix,
    mp_norm_closed_form,
    norm_squared,
    resolve_eigen_law,
    total_mass,
)
from imagshift.quadrature import QuadratureConfig, integrate_line

DEEP = QuadratureConfig(max_levels=10)

FAMILY_POINTS = {
    'mp': (1.0, np.pi / 3),
    'hahn': (0.6, 0.8),
    'dual_hahn': (0.5, 0.7, 1.2),
    'wilson': (0.5, 0.6, 0.7, 0.8),
}


@pytest.fixture(params=sorted(FAMILY_POINTS))
def family(request):
    """One in-range family of each kind."""
    return FAMILIES[request.param](*FAMILY_POINTS[request.param])


def test_meixner_pollaczek_degree_one():
    """Test P_1(s) = 2s at a = 1, phi = pi/2."""
    mp = PolynomialFamily.meixner_pollaczek(1.0, np.pi / 2)
    assert eval_polynomial(mp, 1, 1.0) == pytest.approx(2.0, abs=1e-14)
    assert np.allclose(eval_polynomial(mp, 1, np.array([0.5, -2.0])), [1.0, -4.0])
    assert eval_polynomial(mp, 0, 3.7 + 1j) == pytest.approx(1.0)


def test_wilson_degree_one():
    a, b, c, d, s = 0.5, 0.6, 0.7, 0.8, 0.9
    wilson = PolynomialFamily.wilson(a, b, c, d)
    expected = (a + b) * (a + c) * (a + d) - (a + b + c + d) * (a * a + s * s)
    assert eval_polynomial(wilson, 1, s) == pytest.approx(expected, rel=1e-13)


def test_even_families_are_even_in_s():
    for kind in ('dual_hahn', 'wilson'):
        fam = FAMILIES[kind](*FAMILY_POINTS[kind])
        assert fam.even
        assert eval_polynomial(fam, 3, 0.8 + 0.1j) == pytest.approx(eval_polynomial(fam, 3, -0.8 - 0.1j))
    assert not FAMILIES['mp'](*FAMILY_POINTS['mp']).even


def test_total_mass_matches_quadrature(family):
    """Test the closed-form integral of each weight."""
    numeric = integrate_line(lambda s: family.weight(s), cfg=DEEP).value
    assert abs(numeric - total_mass(family)) < 1e-8 * total_mass(family)


def test_resolved_eigen_relation(family):
    """Test L p_n = lambda_n p_n for n <= 6 with the resolved law."""
    for n in range(7):
        assert eigen_defect(family, n, relative=True) < 1e-9


def test_resolve_eigen_law(family):
    """Test that the sampled resolution picks the recorded law."""
    resolution = resolve_eigen_law(family)
    assert resolution.law == RESOLVED_LAW[family.kind]
    assert set(resolution.defects) == set(EIGEN_LAWS[family.kind])


def test_rejected_wilson_law_fails():
    wilson = FAMILIES['wilson'](*FAMILY_POINTS['wilson'])
    assert eigen_defect(wilson, 2, law='printed', relative=True) > 1e-3


def test_mp_norms():
    """Test the Gram diagonal against Gamma(n+2a)/((2 sin phi)^{2a} n!)."""
    a, phi = 1.0, np.pi / 3
    mp = PolynomialFamily.meixner_pollaczek(a, phi)
    gram = gram_matrix(mp, 7, DEEP).matrix
    diagonal = np.real(np.diag(gram))
    expected = [mp_norm_closed_form(a, phi, n) for n in range(7)]
    assert np.allclose(diagonal, expected, rtol=1e-8)
    off_diagonal = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off_diagonal)) <= 1e-8 * np.max(diagonal)


def test_hahn_orthogonality():
    hahn = PolynomialFamily.continuous_hahn(0.6 + 0.2j, 0.8)
    result = gram_matrix(hahn, 4, DEEP)
    diagonal = np.abs(np.diag(result.matrix))
    off_diagonal = result.matrix - np.diag(np.diag(result.matrix))
    assert np.max(np.abs(off_diagonal)) <= 1e-8 * np.max(diagonal)
    assert result.error.shape == (4, 4)


@pytest.mark.parametrize("kind", sorted(FAMILY_POINTS))
def test_gram_orthogonality_default_config(kind):
    """Test off-diagonals through degree 6 with the default quadrature settings."""
    family = FAMILIES[kind](*FAMILY_POINTS[kind])
    matrix = gram_matrix(family, 7).matrix
    diagonal = np.abs(np.diag(matrix))
    off_diagonal = np.abs(matrix - np.diag(np.diag(matrix)))
    assert np.max(off_diagonal / np.sqrt(np.outer(diagonal, diagonal))) <= 1e-8


def test_norm_squared_of_constant(family):
    if family.kind == 'mp':
        assert norm_squared(family, 0).value == pytest.approx(total_mass(family), rel=1e-12)
    else:
        assert norm_squared(family, 0, DEEP).value == pytest.approx(total_mass(family), rel=1e-8)


def test_mp_norm_laws():
    """Test that both norm laws agree only at a = 1/2."""
    assert mp_norm_closed_form(0.5, 1.0, 3, 'printed') == pytest.approx(mp_norm_closed_form(0.5, 1.0, 3))
    assert mp_norm_closed_form(1.0, 1.0, 3, 'printed') != pytest.approx(mp_norm_closed_form(1.0, 1.0, 3))
    with pytest.raises(ParameterError):
        mp_norm_closed_form(1.0, 1.0, 3, 'bogus')


@pytest.mark.parametrize("degree", [-1, 1.5])
def test_invalid_degree(degree):
    mp = PolynomialFamily.meixner_pollaczek(1.0, 1.0)
    with pytest.raises(ParameterError):
        eval_polynomial(mp, degree, 0.5)


@pytest.mark.parametrize("size", [0, 13])
def test_invalid_gram_size(size):
    with pytest.raises(ParameterError):
        gram_matrix(PolynomialFamily.meixner_pollaczek(1.0, 1.0), size)


def test_family_validation():
    """Test unknown kinds, parameters out of range and unknown laws."""
    with pytest.raises(ParameterError):
        PolynomialFamily('laguerre', (1.0,))
    with pytest.raises(ParameterError):
        FAMILIES['mp'](-1.0, 1.0)
    with pytest.raises(ParameterError):
        FAMILIES['hahn'](0.6, 0.8).eigenvalue(2, 'quadratic')
