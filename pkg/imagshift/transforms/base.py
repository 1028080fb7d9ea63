"""
Transform pairs and the checks shared by all of them.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from imagshift.operators.difference import DifferenceOperator
from imagshift.quadrature import QuadratureConfig, QuadResult, StripFunction
from imagshift.specfun.gamma import finish
from imagshift.utils.cache import EvaluationCache, point_key

DEFAULT_SOURCE_POINTS = (0.4, 0.9, 1.7, 3.1)
DEFAULT_TARGET_POINTS = (0.5, 1.5, 3.0)


def memoize_points(func: Callable, cache: Optional[EvaluationCache] = None,
                   *params) -> Callable:
    """
    Wrap a vectorized point function so every point is computed once.

    ``func`` receives a 1-d complex array of the points missing from the
    cache and returns their values in the same order.
    """
    cache = EvaluationCache() if cache is None else cache

    def evaluate(s):
        arr = np.asarray(s, dtype=complex)
        flat = arr.ravel()
        keys = [point_key(z, *params) for z in flat]
        out = np.empty(flat.shape, dtype=complex)
        missing = []
        for index, key in enumerate(keys):
            value = cache.get(key)
            if value is None:
                missing.append(index)
            else:
                out[index] = value
        if missing:
            # duplicate points inside one call are evaluated once
            unique = {}
            for index in missing:
                unique.setdefault(keys[index], index)
            order = list(unique.values())
            values = np.atleast_1d(np.asarray(func(flat[order]), dtype=complex))
            fresh = {}
            for index, value in zip(order, values):
                fresh[keys[index]] = complex(value)
                cache.set(keys[index], fresh[keys[index]])
            for index in missing:
                out[index] = fresh[keys[index]]
        return finish(out.reshape(arr.shape), arr.ndim == 0)

    evaluate.cache = cache
    return evaluate


@dataclass
class TransformPair:
    """
    A unitary transform with its inverse, its two norms and the
    multiplication operator it carries to a difference operator.

    ``source_norm`` and ``target_norm`` return the squared norms as
    QuadResult values; ``source_multiplication`` is m in
    forward(m g) = target_operator(forward g).
    """

    name: str
    forward: Callable[[Callable], StripFunction]
    inverse: Callable[[Callable], Callable]
    source_norm: Callable[[Callable, Optional[QuadratureConfig]], QuadResult]
    target_norm: Callable[[Callable, Optional[QuadratureConfig]], QuadResult]
    source_weight: Callable
    target_weight: Callable
    source_measure: str
    target_measure: str
    source_multiplication: Optional[Callable] = None
    multiplication_label: str = ''
    target_operator: Optional[DifferenceOperator] = None


class PlancherelResult(NamedTuple):
    """Squared norms on both sides and their relative disagreement."""

    source: float
    target: float
    defect: float


def _times(m: Callable, g: Callable) -> Callable:
    return lambda x: m(x) * g(x)


def intertwining_defect(pair: TransformPair, battery: Iterable[Callable],
                        points: Sequence[float] = DEFAULT_TARGET_POINTS,
                        relative: bool = False) -> float:
    """
    Max over the battery of |target_op(F g)(s) - F(m g)(s)| at ``points``.

    Args:
        pair: Transform pair with an intertwined operator
        battery: Test functions in the source class
        points: Real sample points in the target variable
        relative: Divide each defect by max(1, |F(m g)|)

    Returns:
        Largest defect; 0.0 for an empty battery
    """
    if pair.target_operator is None or pair.source_multiplication is None:
        raise ValueError(f"{pair.name} has no intertwined operator")
    s = np.asarray(points, dtype=complex)
    worst = 0.0
    for g in battery:
        lhs = np.atleast_1d(pair.target_operator.apply(pair.forward(g), s))
        rhs = np.atleast_1d(pair.forward(_times(pair.source_multiplication, g))(s))
        defect = np.abs(lhs - rhs)
        if relative:
            defect = defect / np.maximum(1.0, np.abs(rhs))
        worst = max(worst, float(np.max(defect)))
    return worst


def plancherel(pair: TransformPair, g: Callable,
               cfg: Optional[QuadratureConfig] = None) -> PlancherelResult:
    """Compare the squared norm of g with that of its image."""
    source = float(np.real(pair.source_norm(g, cfg).value))
    target = float(np.real(pair.target_norm(pair.forward(g), cfg).value))
    scale = max(abs(source), np.finfo(float).tiny)
    defect = 0.0 if source == target == 0.0 else abs(source - target) / scale
    return PlancherelResult(source, target, defect)


def round_trip_defect(pair: TransformPair, g: Callable,
                      points: Sequence[float] = DEFAULT_SOURCE_POINTS) -> float:
    """
    Relative RMS of inverse(forward(g)) - g at ``points``.

    Falls back to the absolute RMS when g vanishes on the sample.
    """
    x = np.asarray(points, dtype=float)
    original = np.asarray(g(x), dtype=complex)
    restored = np.asarray(pair.inverse(pair.forward(g))(x), dtype=complex)
    error = np.sqrt(np.mean(np.abs(restored - original) ** 2))
    size = np.sqrt(np.mean(np.abs(original) ** 2))
    return float(error / size) if size > 0 else float(error)
