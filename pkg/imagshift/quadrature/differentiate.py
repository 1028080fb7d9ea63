"""Central differences with Richardson extrapolation."""

from typing import Callable

import numpy as np

from imagshift.errors import StepError

STEPS = 4
# Largest accepted ratio of the extrapolation correction to the value
MAX_RELATIVE_CHANGE = 1e-2


def _extrapolate(estimates):
    table = [list(estimates)]
    for j in range(1, len(estimates)):
        factor = 4.0 ** j
        prev = table[-1]
        table.append([(factor * prev[i + 1] - prev[i]) / (factor - 1.0)
                      for i in range(len(prev) - 1)])
    value = table[-1][0]
    change = np.abs(table[-1][0] - table[-2][-1])
    return value, change


def _checked(value, change, x):
    value = np.asarray(value)
    if not np.all(np.isfinite(value)):
        raise StepError("finite difference is not finite", value=x)
    scale = np.maximum(np.abs(value), 1e-300)
    if np.any((change > MAX_RELATIVE_CHANGE * scale) & (change > 1e-12)):
        raise StepError("extrapolated derivative did not stabilise", value=x,
                        detail=f"last correction {np.max(change):.3e}")
    return value[()] if value.ndim == 0 else value


def richardson_derivative(f: Callable, x, step: float = 1e-2):
    """
    First derivative of f at x from central differences at step, step/2, ...

    The h^2 error expansion of the symmetric quotient is eliminated by
    Romberg's table.

    Raises:
        StepError: If the extrapolated value is not finite or unstable
    """
    x = np.asarray(x)
    estimates = []
    h = step
    for _ in range(STEPS):
        estimates.append((np.asarray(f(x + h)) - np.asarray(f(x - h))) / (2.0 * h))
        h *= 0.5
    return _checked(*_extrapolate(estimates), x)


def richardson_second_derivative(f: Callable, x, step: float = 1e-2):
    """Second derivative of f at x, extrapolated like :func:`richardson_derivative`."""
    x = np.asarray(x)
    center = np.asarray(f(x))
    estimates = []
    h = step
    for _ in range(STEPS):
        estimates.append((np.asarray(f(x + h)) - 2.0 * center + np.asarray(f(x - h))) / (h * h))
        h *= 0.5
    return _checked(*_extrapolate(estimates), x)
