"""Tests for hypergeometric series and 2F1 continuation."""

import mpmath
import numpy as np
import pytest

from imagshift.errors import DivergenceError, ParameterError, PathError
from imagshift.specfun import ContinuationPath, hyp2f1, hyp2F1_about_one, hyp2F1_continued, hyp_pFq


def rel(value, reference):
    return abs(complex(value) - complex(reference)) / abs(complex(reference))


def test_pfq_elementary_cases():
    """Test series with closed forms."""
    assert hyp_pFq([], [], 1.0) == pytest.approx(np.e, rel=1e-14)
    assert hyp_pFq([1], [1], 2.0) == pytest.approx(np.exp(2.0), rel=1e-14)
    assert hyp_pFq([1, 1], [2], 0.5) == pytest.approx(2.0 * np.log(2.0), rel=1e-14)
    assert hyp_pFq([1, 1], [2], 0) == 1


def test_pfq_terminating_outside_unit_disk():
    """Test that a nonpositive-integer upper parameter gives the exact polynomial."""
    # 1 - 40 + 320
    assert hyp_pFq([-2, 3], [1.5], 10.0) == pytest.approx(281.0, rel=1e-14)


def test_pfq_terminating_with_negative_lower_parameter():
    """Test a lower parameter -3 that the degree-2 series never reaches."""
    z = 1.0
    assert hyp_pFq([-2, 1], [-3], z) == pytest.approx(1 + 2 * z / 3 + z * z / 3, rel=1e-14)


def test_pfq_matches_mpmath():
    a, b, c, z = 0.3 + 0.2j, 1.1, 2.4 - 0.5j, 0.6 - 0.3j
    assert rel(hyp_pFq([a, b], [c], z), mpmath.hyp2f1(a, b, c, z)) < 1e-13
    assert rel(hyp_pFq([a, b, 0.5], [c, 1.7], z), mpmath.hyp3f2(a, b, 0.5, c, 1.7, z)) < 1e-13


def test_pfq_broadcasts():
    """Test array arguments."""
    z = np.array([0.1, 0.2, -0.4])
    values = hyp_pFq([1, 1], [2], z)
    assert values.shape == (3,)
    assert np.allclose(values, -np.log(1 - z) / z, rtol=1e-13)


def test_pfq_divergence():
    """Test the convergence region checks."""
    with pytest.raises(DivergenceError):
        hyp_pFq([1, 1], [2], 1.5)
    with pytest.raises(DivergenceError):
        hyp_pFq([1, 1, 1], [2], 0.1)


def test_pfq_lower_parameter_pole():
    with pytest.raises(ParameterError):
        hyp_pFq([0.5, 1], [-1], 0.3)


def test_hyp2f1_inside_and_outside_disk():
    """Test the principal branch inside the disk and by continuation."""
    a, b, c = 0.3, 0.7, 1.6
    for z in (0.5, -3.0, 2 + 1j, -1.5 - 2j):
        assert rel(hyp2f1(a, b, c, z), mpmath.hyp2f1(a, b, c, z)) < 1e-8


def test_hyp2f1_on_branch_cut():
    """Test that straight continuation through z = 1 is refused."""
    with pytest.raises(PathError):
        hyp2f1(0.3, 0.7, 1.6, 2.0)


def test_continuation_from_above_the_cut():
    """Test polyline and arc paths that reach z = 2 from the upper half-plane."""
    a, b, c = 0.3, 0.7, 1.6
    reference = mpmath.hyp2f1(a, b, c, mpmath.mpc(2, 1e-15))
    polyline = ContinuationPath.polyline([1 + 1j, 2])
    assert polyline.waypoints[0] == 0
    assert rel(hyp2F1_continued(a, b, c, polyline), reference) < 1e-8
    arc = ContinuationPath.arc(np.pi / 2)
    assert arc.end == pytest.approx(2.0)
    assert rel(hyp2F1_continued(a, b, c, arc), reference) < 1e-8


def test_continuation_branches_differ():
    """Test that paths above and below the cut give different values."""
    above = hyp2F1_continued(0.3, 0.7, 1.6, ContinuationPath.polyline([1 + 1j, 2]))
    below = hyp2F1_continued(0.3, 0.7, 1.6, ContinuationPath.polyline([1 - 1j, 2]))
    assert abs(above - below) > 1e-3
    assert above == pytest.approx(np.conj(below), rel=1e-8)


def test_continuation_terminating_ignores_path():
    """Test that polynomial cases are evaluated directly."""
    value = hyp2F1_continued(-2, 3, 1.5, ContinuationPath.straight(10.0))
    assert value == pytest.approx(281.0, rel=1e-14)


def test_continuation_parameter_error():
    with pytest.raises(ParameterError):
        hyp2F1_continued(0.3, 0.7, -1, ContinuationPath.straight(2j))


def test_path_validation():
    """Test the start, clearance and finiteness checks."""
    with pytest.raises(PathError):
        ContinuationPath((0.5j, 1j)).validate()
    with pytest.raises(PathError):
        ContinuationPath.polyline([1 + 0.01j, 2 + 1j]).validate()
    with pytest.raises(PathError):
        ContinuationPath.straight(2j, clearance=0.0).validate()
    ContinuationPath.polyline([0.5 + 0.5j, 1.5 + 0.5j]).validate()


def test_about_one_matches_mpmath():
    """Test the connection to the series about z = 1."""
    a, b, c = 0.3 + 0.2j, 1.1, 2.4 - 0.5j
    for z in (0.8 + 0.1j, 0.6, 1.3 - 0.2j):
        assert rel(hyp2F1_about_one(a, b, c, z), mpmath.hyp2f1(a, b, c, z)) < 1e-11


def test_about_one_integer_gap():
    """Test that c - a - b near an integer is refused."""
    with pytest.raises(ParameterError):
        hyp2F1_about_one(0.5, 0.5, 1.0, 0.9)
    with pytest.raises(ParameterError):
        hyp2F1_about_one(0.25, 0.5, 2.8, 0.9)


def test_hyp2f1_large_imaginary_parameter():
    """Test a parameter far up the imaginary axis, where the series about 0 cancels badly."""
    a, b, c = 0.5 + 0.3j, 0.5 + 200j, 1.0
    z = 1.0 - np.exp(-1.6)
    assert rel(hyp2f1(a, b, c, z), mpmath.hyp2f1(a, b, c, z)) < 1e-8
    assert rel(hyp2f1(a, b, c, 0.3), mpmath.hyp2f1(a, b, c, 0.3)) < 1e-8


def test_continuation_start_radius_shrinks():
    """Test ODE continuation for two large parameters that defeat both series."""
    a, b, c = 0.5 - 30j, 0.5 + 30j, 1.0
    z = 0.7
    reference = mpmath.hyp2f1(a, b, c, z)
    assert rel(hyp2F1_continued(a, b, c, ContinuationPath.straight(z)), reference) < 1e-7
    assert rel(hyp2f1(a, b, c, z), reference) < 1e-7
