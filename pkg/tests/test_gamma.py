"""Tests for the complex gamma function module."""

import mpmath
import numpy as np
import pytest

from imagshift.errors import PoleError
from imagshift.specfun import beta, gamma, log_gamma, log_rgamma, pochhammer, rgamma


def rel(value, reference):
    return abs(complex(value) - complex(reference)) / abs(complex(reference))


@pytest.mark.parametrize("z", [5.0, 0.5, 1 + 1j, 0.25 - 3j, -2.5, -0.7 + 0.2j, 12.3 + 40j])
def test_gamma_matches_mpmath(z):
    """Test gamma against an arbitrary-precision reference."""
    assert rel(gamma(z), mpmath.gamma(z)) < 1e-12


def test_gamma_reflection_region():
    """Test far-left arguments that go through the reflection formula."""
    z = -25.5 + 0.3j
    assert rel(gamma(z), mpmath.gamma(z)) < 1e-10


def test_gamma_exact_values():
    """Test factorials and Gamma(1/2)."""
    assert gamma(5) == pytest.approx(24.0, rel=1e-13)
    assert gamma(0.5) == pytest.approx(np.sqrt(np.pi), rel=1e-13)
    assert isinstance(gamma(1.0), complex)


def test_gamma_array_shape():
    """Test that arrays keep their shape."""
    z = np.array([[1.0, 2.0], [3.0, 4.0]])
    values = gamma(z)
    assert values.shape == (2, 2)
    assert np.allclose(values, [[1, 1], [2, 6]], rtol=1e-13)


@pytest.mark.parametrize("z", [0, -1, -7, np.array([1.0, -3.0])])
def test_gamma_pole(z):
    """Test that poles raise instead of returning inf."""
    with pytest.raises(PoleError) as exc_info:
        gamma(z)
    assert "Pole" in str(exc_info.value)


@pytest.mark.parametrize("z", [3.5, 100 + 100j, 0.5 - 20j, 1e3 + 1j])
def test_log_gamma_principal_branch(z):
    """Test log gamma on the right half-plane, imaginary part included."""
    assert abs(log_gamma(z) - complex(mpmath.loggamma(z))) < 1e-10 * max(1.0, abs(z))


def test_log_gamma_no_overflow():
    """Test that log gamma is finite where gamma itself overflows."""
    value = log_gamma(500.0 + 0j)
    assert np.isfinite(value)
    assert value.real == pytest.approx(float(mpmath.loggamma(500)), rel=1e-13)


def test_log_gamma_pole():
    with pytest.raises(PoleError):
        log_gamma(-4)


def test_rgamma_is_entire():
    """Test that the reciprocal gamma function vanishes at the poles."""
    values = rgamma(np.array([0.0, -1.0, 2.0, -5.0]))
    assert np.allclose(values, [0.0, 0.0, 1.0, 0.0])
    assert rgamma(-3) == 0


def test_log_rgamma_at_pole():
    assert log_rgamma(0).real == -np.inf


def test_pochhammer():
    """Test the rising factorial."""
    assert pochhammer(0.5, 3) == pytest.approx(1.875)
    assert pochhammer(2 + 1j, 0) == 1
    assert pochhammer(-2, 3) == 0
    assert pochhammer(1 + 1j, 4) == pytest.approx(complex(mpmath.rf(1 + 1j, 4)))


def test_pochhammer_negative_order():
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


def test_beta():
    """Test the beta function, including a pole of Gamma(x + y)."""
    assert beta(2, 3) == pytest.approx(1.0 / 12.0, rel=1e-13)
    assert beta(0.3 + 0.4j, 1.2) == pytest.approx(complex(mpmath.beta(0.3 + 0.4j, 1.2)), rel=1e-12)
    assert beta(0.5, -0.5) == 0


def test_beta_pole():
    with pytest.raises(PoleError):
        beta(-1, 2.5)
