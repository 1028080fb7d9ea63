"""Test configuration for imagshift tests."""

import os
from unittest.mock import MagicMock

import numpy as np
import pytest

from imagshift.quadrature import QuadratureConfig
from imagshift.verify import Check, CheckResult, SuiteReport

# Add the project root directory to the Python path
os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))


@pytest.fixture
def quad_cfg():
    """Quadrature configuration at the default tolerances."""
    return QuadratureConfig()


@pytest.fixture
def gaussian():
    """Vectorized e^{-s^2}, entire and super-exponentially decaying."""
    return lambda s: np.exp(-np.asarray(s, dtype=complex) ** 2)


@pytest.fixture
def sample_report():
    """A small report with one passing and one failing check."""
    return SuiteReport('specfun', [
        CheckResult('specfun.gamma_recurrence', 'Gamma(z+1) = z Gamma(z)', 3.2e-15, 1e-12, True, 4),
        CheckResult('specfun.kummer_barnes', 'Kummer and Barnes integrals agree', None, 1e-8, False, 0,
                    error='Divergence: series not converged after 10 terms'),
    ])


@pytest.fixture
def mock_check():
    """Create a factory for checks whose run callable is a MagicMock."""
    def make(check_id, defect, tol=1e-6):
        run = MagicMock(return_value=defect)
        return Check(check_id, f"anchor of {check_id}", tol, run)
    return make
