"""
Generalized hypergeometric series and the Gauss function beyond the unit disk.

``hyp_pFq`` sums the series by the term-ratio recurrence, exactly for
terminating parameters. ``hyp2F1_continued`` continues 2F1 along a
polygonal path by integrating the hypergeometric differential equation
with scipy's DOP853 integrator, which keeps track of the branch.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from imagshift.errors import DivergenceError, ParameterError, PathError
from imagshift.specfun.gamma import _log_gamma_regular, finish, log_gamma, log_rgamma
from imagshift.utils import config

# Radius of the disk where series initial data for the ODE is taken
SERIES_START_RADIUS = 0.5
# Largest (|a| + |b|)|z| for which the 2F1 series about 0 is summed directly
SERIES_GROWTH_LIMIT = 8.0
# The series about z = 1 serve |1 - z| up to this radius
ABOUT_ONE_RADIUS = 0.5
# Least distance of c - a - b from an integer for the series about z = 1
CONNECTION_GAP = 0.1

_INT_TOL = 1e-14


def _nonpositive_integer(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    nearest = np.round(values.real)
    mask = (nearest <= 0) & (np.abs(values - nearest) < _INT_TOL)
    return mask, (-nearest).astype(int)


def hyp_pFq(a: Sequence, b: Sequence, z, rel_tol: Optional[float] = None,
            max_terms: Optional[int] = None):
    """
    Generalized hypergeometric series pFq(a; b; z).

    Parameters and argument broadcast against each other. A series with a
    nonpositive-integer upper parameter -N is summed exactly through its
    last nonzero term.

    Args:
        a: Upper parameters (scalars or arrays)
        b: Lower parameters (scalars or arrays)
        z: Argument
        rel_tol: Stop after three consecutive terms below rel_tol * |sum|
        max_terms: Term cap before DivergenceError

    Returns:
        Series value (Python complex for scalar input)

    Raises:
        ParameterError: On a lower parameter at a nonpositive integer that
            the series reaches
        DivergenceError: Outside the convergence region or on hitting the cap
    """
    rel_tol = config.SERIES_REL_TOL if rel_tol is None else rel_tol
    max_terms = config.SERIES_MAX_TERMS if max_terms is None else max_terms

    raw = [np.asarray(v, dtype=complex) for v in (*a, *b, z)]
    scalar = all(r.ndim == 0 for r in raw)
    arrays = np.broadcast_arrays(*raw)
    p, q = len(a), len(b)
    upper, lower, zz = arrays[:p], arrays[p:p + q], arrays[-1]

    order = np.full(zz.shape, -1, dtype=int)
    for ai in upper:
        mask, n = _nonpositive_integer(ai)
        order = np.where(mask & ((order < 0) | (n < order)), n, order)
    terminating = order >= 0

    for bj in lower:
        mask, m = _nonpositive_integer(bj)
        if np.any(mask & (~terminating | (order > m))):
            raise ParameterError("lower parameter at a nonpositive integer",
                                 value=bj[mask].ravel()[0])

    nonterminating = ~terminating & (zz != 0)
    if np.any(nonterminating):
        if p > q + 1:
            raise DivergenceError(f"{p}F{q} series diverges for z != 0")
        if p == q + 1 and np.any(nonterminating & (np.abs(zz) >= 1.0)):
            raise DivergenceError(f"{p}F{q} series needs |z| < 1",
                                  value=zz[nonterminating & (np.abs(zz) >= 1.0)].ravel()[0])

    total = np.ones(zz.shape, dtype=complex)
    term = np.ones(zz.shape, dtype=complex)
    small = np.zeros(zz.shape, dtype=int)
    active = ~(terminating & (order == 0))

    for k in range(max_terms):
        if not np.any(active):
            break
        ratio = zz / (k + 1)
        for ai in upper:
            ratio = ratio * (ai + k)
        for bj in lower:
            ratio = ratio / np.where(active, bj + k, 1.0)
        term = np.where(active, term * ratio, 0.0)
        total = total + term
        tiny = np.abs(term) <= rel_tol * np.abs(total)
        small = np.where(tiny, small + 1, 0)
        active = active & ~(terminating & (k + 1 >= order)) & (small < 3)

    if np.any(active):
        raise DivergenceError(f"series not converged after {max_terms} terms")
    if not np.all(np.isfinite(total)):
        raise DivergenceError("series overflowed")
    return finish(total, scalar)


@dataclass(frozen=True)
class ContinuationPath:
    """Polygonal path in the argument plane of 2F1, starting at 0."""

    waypoints: Tuple[complex, ...]
    clearance: float = 0.05

    @classmethod
    def straight(cls, z_end, clearance: float = 0.05) -> 'ContinuationPath':
        """Segment from 0 to ``z_end``."""
        return cls((0j, complex(z_end)), clearance)

    @classmethod
    def polyline(cls, points: Sequence, clearance: float = 0.05) -> 'ContinuationPath':
        """Path through ``points``; 0 is prepended when missing."""
        pts = tuple(complex(p) for p in points)
        if not pts or pts[0] != 0:
            pts = (0j,) + pts
        return cls(pts, clearance)

    @classmethod
    def arc(cls, theta_end: float, sign: int = -1, n_points: int = 64,
            clearance: float = 0.05) -> 'ContinuationPath':
        """Chords of the circle z = 1 - exp(2i*sign*theta), theta from 0 to theta_end."""
        thetas = np.linspace(0.0, theta_end, n_points + 1)
        pts = 1.0 - np.exp(2j * sign * thetas)
        pts[0] = 0.0
        return cls(tuple(complex(p) for p in pts), clearance)

    @property
    def end(self) -> complex:
        return self.waypoints[-1]

    def segments(self) -> Iterator[Tuple[complex, complex]]:
        for start, stop in zip(self.waypoints[:-1], self.waypoints[1:]):
            yield start, stop

    def validate(self) -> None:
        """
        Check the path.

        Raises:
            PathError: If the path does not start at 0, is not finite, or
                passes within the clearance of z = 1
        """
        if not self.waypoints or self.waypoints[0] != 0:
            raise PathError("continuation path must start at z = 0")
        if not all(np.isfinite(w) for w in self.waypoints):
            raise PathError("continuation path must be finite")
        if self.clearance <= 0:
            raise PathError("clearance must be positive", value=self.clearance)
        for start, stop in self.segments():
            distance = _distance_to_one(start, stop)
            if distance < self.clearance:
                raise PathError("path passes too close to z = 1",
                                value=distance,
                                detail=f"segment {start} -> {stop}, clearance {self.clearance}")


def _distance_to_one(start: complex, stop: complex) -> float:
    d = stop - start
    if d == 0:
        return abs(start - 1.0)
    t = ((1.0 - start) * np.conj(d)).real / abs(d) ** 2
    t = min(max(t, 0.0), 1.0)
    return abs(start + t * d - 1.0)


def _exit_point(start: complex, stop: complex, radius: float) -> complex:
    d = stop - start
    qa = abs(d) ** 2
    qb = 2.0 * (start * np.conj(d)).real
    qc = abs(start) ** 2 - radius ** 2
    t = (-qb + np.sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa)
    return start + t * d


def hyp2F1_continued(a, b, c, path: ContinuationPath, rtol: Optional[float] = None,
                     debug: Optional[bool] = None):
    """
    Analytic continuation of 2F1(a, b; c; z) from 0 along ``path``.

    Parameters broadcast; every element shares the path. The series
    supplies F and F' on a circle about 0, of radius 1/2 shrunk for large
    |a| + |b|, and the ODE
    z(1-z)F'' + (c - (a+b+1)z)F' - abF = 0 carries them along the rest.

    Args:
        a, b, c: Parameters (scalars or arrays)
        path: Continuation path from 0
        rtol: Relative tolerance of the ODE integrator
        debug: Print per-segment progress

    Returns:
        Continued value at ``path.end``

    Raises:
        ParameterError: If c is a nonpositive integer
        PathError: If the path violates its clearance
        DivergenceError: If the integrator fails
    """
    rtol = config.ODE_RTOL if rtol is None else rtol
    debug = config.DEBUG if debug is None else debug

    raw = [np.asarray(v, dtype=complex) for v in (a, b, c)]
    shape = np.broadcast_shapes(*(r.shape for r in raw))
    aa, bb, cc = (np.array(x).ravel() for x in np.broadcast_arrays(*raw))

    def done(values):
        return finish(values.reshape(shape), len(shape) == 0)

    c_pole, _ = _nonpositive_integer(cc)
    if np.any(c_pole):
        raise ParameterError("c must not be a nonpositive integer", value=cc[c_pole][0])

    z_end = path.end
    term_a, _ = _nonpositive_integer(aa)
    term_b, _ = _nonpositive_integer(bb)
    polynomial = term_a | term_b
    out = np.empty(aa.shape, dtype=complex)
    if np.any(polynomial):
        out[polynomial] = hyp_pFq([aa[polynomial], bb[polynomial]], [cc[polynomial]], z_end)
    if np.all(polynomial):
        return done(out)

    path.validate()
    rest = ~polynomial
    ra, rb, rc = aa[rest], bb[rest], cc[rest]

    points = path.waypoints
    radius = _start_radius(ra, rb)
    first_out = next((i for i, w in enumerate(points) if abs(w) > radius), None)
    if first_out is None:
        out[rest] = hyp_pFq([ra, rb], [rc], z_end)
        return done(out)

    z_start = _exit_point(points[first_out - 1], points[first_out], radius)
    value = hyp_pFq([ra, rb], [rc], z_start)
    slope = ra * rb / rc * hyp_pFq([ra + 1, rb + 1], [rc + 1], z_start)
    y = np.concatenate([np.atleast_1d(value), np.atleast_1d(slope)])

    m = ra.size
    ab = ra * rb
    apb1 = ra + rb + 1.0
    route = (z_start,) + points[first_out:]

    for start, stop in zip(route[:-1], route[1:]):
        d = stop - start
        if d == 0:
            continue

        def rhs(t, state, start=start, d=d):
            z = start + t * d
            f, g = state[:m], state[m:]
            dg = (ab * f - (rc - apb1 * z) * g) / (z * (1.0 - z))
            return d * np.concatenate([g, dg])

        atol = rtol * 1e-3 * np.maximum(np.abs(y), 1e-300)
        sol = solve_ivp(rhs, (0.0, 1.0), y, method='DOP853', rtol=rtol, atol=atol)
        if not sol.success:
            raise DivergenceError("continuation integrator failed",
                                  detail=f"segment {start} -> {stop}: {sol.message}")
        y = sol.y[:, -1]
        if debug:
            print(f"continuation {start:.4g} -> {stop:.4g}: {sol.nfev} evaluations")

    if not np.all(np.isfinite(y)):
        raise DivergenceError("continuation produced a non-finite value")
    out[rest] = y[:m]
    return done(out)


def hyp2F1_about_one(a, b, c, z):
    """
    2F1(a, b; c; z) from the pair of series about z = 1.

        2F1 = A 2F1(a, b; a+b-c+1; 1-z) + B (1-z)^(c-a-b) 2F1(c-a, c-b; c-a-b+1; 1-z)

    with A = G(c)G(c-a-b) / (G(c-a)G(c-b)) and B = G(c)G(a+b-c) / (G(a)G(b)).
    The coefficients are formed from log-gamma, so large imaginary parts in
    the parameters do not overflow the individual gamma factors.

    Raises:
        ParameterError: If c - a - b lies within CONNECTION_GAP of an integer
        DivergenceError: If |1 - z| >= 1
    """
    raw = [np.asarray(v, dtype=complex) for v in (a, b, c, z)]
    shape = np.broadcast_shapes(*(r.shape for r in raw))
    aa, bb, cc, zz = (np.array(x).ravel() for x in np.broadcast_arrays(*raw))

    gap = cc - aa - bb
    near = _integer_distance(gap) < CONNECTION_GAP
    if np.any(near):
        raise ParameterError("c - a - b is too close to an integer for the series about 1",
                             value=gap[near][0])

    w = 1.0 - zz
    log_c = log_gamma(cc)
    with np.errstate(under='ignore'):
        first = np.exp(log_c + _log_gamma_regular(gap)
                       + log_rgamma(cc - aa) + log_rgamma(cc - bb))
        second = np.exp(log_c + _log_gamma_regular(-gap)
                        + log_rgamma(aa) + log_rgamma(bb) + gap * np.log(w))
    out = (first * hyp_pFq([aa, bb], [1.0 - gap], w)
           + second * hyp_pFq([cc - aa, cc - bb], [1.0 + gap], w))
    return finish(np.asarray(out).reshape(shape), len(shape) == 0)


def _integer_distance(values: np.ndarray) -> np.ndarray:
    return np.abs(values - np.round(values.real))


def _start_radius(a: np.ndarray, b: np.ndarray) -> float:
    size = float(np.max(np.abs(a) + np.abs(b), initial=0.0))
    if size == 0.0:
        return SERIES_START_RADIUS
    return min(SERIES_START_RADIUS, SERIES_GROWTH_LIMIT / size)


def series_growth(a, b, z) -> np.ndarray:
    """(|a| + |b|)|z|: the log-scale of the terms the series about 0 must cancel."""
    return (np.abs(a) + np.abs(b)) * np.abs(z)


def about_one_applies(a, b, c, z) -> np.ndarray:
    """Mask of points where the series about z = 1 are accurate."""
    w = np.abs(1.0 - z)
    left = np.minimum(np.abs(a), np.abs(b))
    right = np.minimum(np.abs(c - a), np.abs(c - b))
    return ((w <= ABOUT_ONE_RADIUS)
            & (np.maximum(left, right) * w <= SERIES_GROWTH_LIMIT)
            & (_integer_distance(c - a - b) >= CONNECTION_GAP))


def hyp2f1(a, b, c, z):
    """
    Gauss hypergeometric function on the principal branch.

    The series about 0 serves small |z| with moderate parameters; points
    near 1 use the series about 1 when the connection is well conditioned;
    everything else is reached by continuation along the straight segment
    from 0.
    """
    raw = [np.asarray(v, dtype=complex) for v in (a, b, c, z)]
    shape = np.broadcast_shapes(*(r.shape for r in raw))
    aa, bb, cc, zz = (np.array(x).ravel() for x in np.broadcast_arrays(*raw))
    direct = ((np.abs(zz) < config.CONTINUATION_RADIUS)
              & (series_growth(aa, bb, zz) <= SERIES_GROWTH_LIMIT))
    term_a, _ = _nonpositive_integer(aa)
    term_b, _ = _nonpositive_integer(bb)
    direct |= term_a | term_b
    near_one = ~direct & about_one_applies(aa, bb, cc, zz)

    out = np.empty(zz.shape, dtype=complex)
    if np.any(direct):
        out[direct] = hyp_pFq([aa[direct], bb[direct]], [cc[direct]], zz[direct])
    if np.any(near_one):
        out[near_one] = hyp2F1_about_one(aa[near_one], bb[near_one], cc[near_one],
                                         zz[near_one])
    for index in np.flatnonzero(~direct & ~near_one):
        out[index] = hyp2F1_continued(aa[index], bb[index], cc[index],
                                      ContinuationPath.straight(zz[index]))
    return finish(out.reshape(shape), len(shape) == 0)
