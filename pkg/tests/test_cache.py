"""
Tests for the point-evaluation cache.
"""

import numpy as np
import pytest

from imagshift.transforms import memoize_points
from imagshift.utils.cache import EvaluationCache, point_key


@pytest.fixture
def evaluation_cache():
    """Create an EvaluationCache small enough to exercise eviction."""
    return EvaluationCache(max_entries=2)


def test_point_key_rounding():
    """Test that keys agree for points equal to 15 significant digits."""
    assert point_key(0.1 + 0.2, 'g1') == point_key(0.3, 'g1')
    assert point_key(1 + 2j) == ((1.0, 2.0),)
    assert point_key(1 + 2j, 'g1') != point_key(1 + 2j, 'g2')
    assert point_key(True) == (True,)


def test_cache_set_get(evaluation_cache):
    key = point_key(0.5 + 1j)
    evaluation_cache.set(key, 3.0 - 1j)
    assert evaluation_cache.get(key) == 3.0 - 1j
    assert len(evaluation_cache) == 1


def test_cache_evicts_least_recently_used(evaluation_cache):
    """Test that reading an entry protects it from the next eviction."""
    evaluation_cache.set(point_key(1.0), 'a')
    evaluation_cache.set(point_key(2.0), 'b')
    assert evaluation_cache.get(point_key(1.0)) == 'a'

    evaluation_cache.set(point_key(3.0), 'c')

    assert len(evaluation_cache) == 2
    assert evaluation_cache.get(point_key(2.0)) is None
    assert evaluation_cache.get(point_key(1.0)) == 'a'
    assert evaluation_cache.get(point_key(3.0)) == 'c'


def test_cache_default_capacity(monkeypatch):
    from imagshift.utils import config
    monkeypatch.setattr(config, 'CACHE_MAX_ENTRIES', 3)
    assert EvaluationCache().max_entries == 3


def test_cache_rejects_empty_capacity():
    with pytest.raises(ValueError):
        EvaluationCache(max_entries=0)


def test_cache_clear(evaluation_cache):
    evaluation_cache.set('k', 1.0)
    evaluation_cache.clear()
    assert evaluation_cache.get('k') is None


def test_cache_nonexistent_key(evaluation_cache):
    assert evaluation_cache.get('nonexistent') is None


def test_memoized_closure_stays_bounded(mocker):
    """Test that a memoized closure keeps at most its capacity and still returns every point."""
    func = mocker.Mock(side_effect=lambda s: 2.0 * s)
    evaluate = memoize_points(func, EvaluationCache(max_entries=3))

    values = evaluate(np.arange(5.0))

    assert np.allclose(values, 2.0 * np.arange(5.0))
    assert len(evaluate.cache) == 3
    evaluate(np.array([4.0]))
    assert func.call_count == 1
    evaluate(np.array([0.0]))
    assert func.call_count == 2
