"""
Macdonald and Whittaker functions of complex order on the positive axis.

K_nu(x) is summed from the I_{+-nu} series for small x and otherwise taken
from the cosh integral on a contour shifted through the saddle point.
W_{rho,sigma}(x) has three representations: the two-term M-function
formula, the Kummer integral and the Barnes integral. The ``auto`` route
picks whichever is free of cancellation at the requested point.
"""

from typing import Callable, Sequence

import numpy as np

from imagshift.errors import DivergenceError, DomainError, ParameterError
from imagshift.specfun.gamma import (
    _log_gamma_regular,
    finish,
    log_rgamma,
    rgamma,
)
from imagshift.specfun.hypergeometric import hyp_pFq

# I-series route for x up to this value
K_SERIES_MAX_X = 2.0
# Orders closer than this to an integer use the contour integral
K_INTEGER_GAP = 0.05
K_SERIES_TERMS = 60

# Distance of 2*sigma from an integer below which W uses the Barnes integral
W_BARNES_GAP = 0.05
W_SERIES_MAX_X = 30.0

_CHUNK = 1024


def _real_argument(x) -> np.ndarray:
    xa = np.asarray(x)
    if np.iscomplexobj(xa):
        if np.any(xa.imag != 0):
            raise DomainError("argument must be real and positive")
        xa = xa.real
    xa = xa.astype(float)
    if np.any(~np.isfinite(xa)) or np.any(xa <= 0):
        raise DomainError("argument must be real and positive",
                          value=xa[~(xa > 0)].ravel()[0] if np.any(~(xa > 0)) else None)
    return xa


def _row_trapezoid(func: Callable, start: np.ndarray, step: np.ndarray,
                   counts: np.ndarray, params: Sequence[np.ndarray]) -> np.ndarray:
    """
    Per-row trapezoid sums step * sum_k func(start + k*step) for k < counts.

    Rows have their own node count; they are padded to a rectangle and
    masked so that the whole chunk evaluates in one vectorized call.
    """
    total = np.zeros(start.shape, dtype=complex)
    for lo in range(0, start.size, _CHUNK):
        rows = slice(lo, lo + _CHUNK)
        k = np.arange(int(counts[rows].max()))
        nodes = start[rows, None] + step[rows, None] * k[None, :]
        mask = k[None, :] < counts[rows, None]
        with np.errstate(all='ignore'):
            values = func(nodes, *(p[rows, None] for p in params))
            values = np.where(mask, values, 0.0)
        total[rows] = values.sum(axis=1) * step[rows]
    return total


def _k_series(nu: np.ndarray, x: np.ndarray) -> np.ndarray:
    half = x / 2.0
    quarter = half * half
    log_half = np.log(half)
    t_plus = np.exp(nu * log_half) * rgamma(nu + 1.0)
    t_minus = np.exp(-nu * log_half) * rgamma(1.0 - nu)
    i_plus, i_minus = t_plus.copy(), t_minus.copy()
    for k in range(1, K_SERIES_TERMS):
        t_plus = t_plus * quarter / (k * (k + nu))
        t_minus = t_minus * quarter / (k * (k - nu))
        i_plus = i_plus + t_plus
        i_minus = i_minus + t_minus
    return np.pi / (2.0 * np.sin(np.pi * nu)) * (i_minus - i_plus)


def _k_integrand(t, nu, x):
    return np.exp(-x * np.cosh(t) + nu * t)


def _k_integral(nu: np.ndarray, x: np.ndarray) -> np.ndarray:
    beta = np.sign(nu.imag) * np.minimum(np.arcsin(np.minimum(np.abs(nu.imag) / x, 1.0)), 1.4)
    h = np.minimum(0.05, (np.pi / 2 - np.abs(beta)) / 6.0)
    width = x * np.cos(beta)
    half_range = np.zeros_like(x)
    for _ in range(3):
        half_range = np.arccosh(1.0 + (45.0 + 2.0 * np.maximum(nu.real, 0.0) * half_range) / width)
    half_range = np.maximum(half_range, 1.0)
    n = np.ceil(half_range / h).astype(int)
    start = -n * h + 1j * beta
    total = _row_trapezoid(_k_integrand, start, h.astype(complex), 2 * n + 1, (nu, x))
    return 0.5 * total


def macdonald_K(nu, x, method: str = 'auto'):
    """
    Macdonald function K_nu(x) for complex order and x > 0.

    Normalized by K_nu = pi/(2 sin(nu pi)) (I_{-nu} - I_nu). Even in nu,
    and real when nu is real or purely imaginary.

    Args:
        nu: Order (scalar or array)
        x: Positive real argument (scalar or array)
        method: 'auto', 'series' or 'integral'

    Returns:
        K_nu(x)

    Raises:
        DomainError: For x <= 0
        ParameterError: For the series route at near-integer order
    """
    nu_raw = np.asarray(nu, dtype=complex)
    x_raw = _real_argument(x)
    shape = np.broadcast_shapes(nu_raw.shape, x_raw.shape)
    nu_arr, x_arr = (np.array(v).ravel() for v in np.broadcast_arrays(nu_raw, x_raw))
    nu_arr = np.where(nu_arr.real < 0, -nu_arr, nu_arr)

    near_integer = np.abs(nu_arr - np.round(nu_arr.real)) < K_INTEGER_GAP
    if method == 'auto':
        use_series = (x_arr <= K_SERIES_MAX_X) & ~near_integer
    elif method == 'series':
        if np.any(near_integer):
            raise ParameterError("I-series route is singular at integer order")
        use_series = np.ones(x_arr.shape, dtype=bool)
    elif method == 'integral':
        use_series = np.zeros(x_arr.shape, dtype=bool)
    else:
        raise ValueError(f"Unknown method: {method}")

    out = np.empty(x_arr.shape, dtype=complex)
    if np.any(use_series):
        out[use_series] = _k_series(nu_arr[use_series], x_arr[use_series])
    if np.any(~use_series):
        out[~use_series] = _k_integral(nu_arr[~use_series], x_arr[~use_series])

    if not np.all(np.isfinite(out)):
        raise DivergenceError("Macdonald function evaluation overflowed")
    real_valued = (nu_arr.real == 0) | (nu_arr.imag == 0)
    out = np.where(real_valued, out.real + 0j, out)
    return finish(out.reshape(shape), len(shape) == 0)


def _w_series(rho, sigma, x):
    if np.any(np.abs(2 * sigma - np.round(2 * sigma.real)) < 1e-3):
        raise ParameterError("two-term formula is singular for 2*sigma near an integer")
    log_x = np.log(x)
    m_plus = np.exp(-x / 2 + (0.5 + sigma) * log_x) * hyp_pFq([0.5 + sigma - rho], [1 + 2 * sigma], x)
    m_minus = np.exp(-x / 2 + (0.5 - sigma) * log_x) * hyp_pFq([0.5 - sigma - rho], [1 - 2 * sigma], x)
    # Gamma ratios in log form: each factor alone overflows for large |Im sigma|
    with np.errstate(under='ignore'):
        c_plus = np.exp(_log_gamma_regular(-2 * sigma) + log_rgamma(0.5 - sigma - rho))
        c_minus = np.exp(_log_gamma_regular(2 * sigma) + log_rgamma(0.5 + sigma - rho))
    return c_plus * m_plus + c_minus * m_minus


def _kummer_integrand(y, alpha, beta, x):
    u = np.exp(y)
    # expm1(...)/u stays bounded as u -> 0
    return np.exp(-u + (alpha + 1.0) * y) * (np.expm1(beta * np.log1p(u / x)) / u)


def _w_kummer(rho, sigma, x):
    alpha = 0.5 + sigma - rho
    beta = sigma + rho - 0.5
    if np.any(alpha.real <= -1):
        raise ParameterError("Kummer integral needs Re(1/2 + sigma - rho) > -1")
    h = np.minimum(0.1, np.pi ** 2 / (40.0 + 1.6 * (np.abs(alpha.imag) + np.abs(beta.imag))))
    y_min = np.maximum(np.log(1e-18 * x / (np.abs(beta) + 1.0)) / (alpha.real + 1.0) - 2.0, -600.0)
    u_max = 50.0 + 3.0 * (np.abs(alpha) + np.abs(beta)) + np.abs(beta.real) * np.abs(np.log(x))
    counts = np.ceil((np.log(u_max) - y_min) / h).astype(int) + 1
    integral = _row_trapezoid(_kummer_integrand, y_min.astype(complex), h.astype(complex),
                              counts, (alpha, beta, x.astype(complex)))
    return np.exp(-x / 2 + rho * np.log(x)) * (1.0 + rgamma(alpha) * integral)


def _barnes_line(rho, sigma):
    lo = -0.5 + np.abs(sigma.real)
    hi = -rho
    return lo, hi


def _barnes_integrand(t, sigma, rho, log_x):
    return np.exp(_log_gamma_regular(0.5 + sigma + t) + _log_gamma_regular(0.5 - sigma + t)
                  + _log_gamma_regular(-rho - t) - t * log_x)


def _w_barnes(rho, sigma, x):
    lo, hi = _barnes_line(rho, sigma)
    if np.any(lo >= hi):
        raise DomainError("no Barnes contour separates the pole sequences",
                          detail="needs -1/2 + |Re sigma| < -rho")
    c = 0.5 * (lo + hi)
    gap = 0.5 * (hi - lo)
    h = np.minimum(0.1, 2 * np.pi * gap / 40.0)
    extent = np.abs(sigma.imag) + 12.0
    counts = np.ceil(2 * extent / h).astype(int) + 1
    start = c - 1j * extent
    integral = _row_trapezoid(_barnes_integrand, start, 1j * h, counts,
                              (sigma, rho.astype(complex), np.log(x).astype(complex)))
    prefactor = np.exp(-x / 2) / (2j * np.pi) * rgamma(0.5 + sigma - rho) * rgamma(0.5 - sigma - rho)
    return prefactor * integral


_W_METHODS = {
    'series': _w_series,
    'kummer': _w_kummer,
    'barnes': _w_barnes,
}


def whittaker_W(rho, sigma, x, method: str = 'auto'):
    """
    Whittaker function W_{rho,sigma}(x) for real rho, complex sigma, x > 0.

    Args:
        rho: Real first index (scalar or array)
        sigma: Complex second index (scalar or array)
        x: Positive real argument (scalar or array)
        method: 'auto', 'series', 'kummer' or 'barnes'

    Returns:
        W_{rho,sigma}(x); even in sigma

    Raises:
        DomainError: For x <= 0, or when the Barnes contour does not exist
        ParameterError: When the chosen representation does not apply
    """
    rho_raw = np.asarray(rho, dtype=float)
    sigma_raw = np.asarray(sigma, dtype=complex)
    x_raw = _real_argument(x)
    shape = np.broadcast_shapes(rho_raw.shape, sigma_raw.shape, x_raw.shape)
    rho_arr, sigma_arr, x_arr = (np.array(v).ravel()
                                 for v in np.broadcast_arrays(rho_raw, sigma_raw, x_raw))
    flip = (sigma_arr.real < 0) | ((sigma_arr.real == 0) & (sigma_arr.imag < 0))
    sigma_arr = np.where(flip, -sigma_arr, sigma_arr)

    if method in _W_METHODS:
        out = _W_METHODS[method](rho_arr, sigma_arr, x_arr)
    elif method == 'auto':
        out = _w_auto(rho_arr, sigma_arr, x_arr)
    else:
        raise ValueError(f"Unknown method: {method}")

    if not np.all(np.isfinite(out)):
        raise DivergenceError("Whittaker function evaluation overflowed")
    real_valued = (sigma_arr.real == 0) | (sigma_arr.imag == 0)
    out = np.where(real_valued, out.real + 0j, out)
    return finish(out.reshape(shape), len(shape) == 0)


def _w_auto(rho, sigma, x):
    alpha = 0.5 + sigma - rho
    lo, hi = _barnes_line(rho, sigma)
    near_integer = np.abs(2 * sigma - np.round(2 * sigma.real)) < W_BARNES_GAP
    series_limit = np.minimum(np.pi * np.abs(sigma.imag) / 2 + 2.0, W_SERIES_MAX_X)
    kummer_ok = alpha.real > -1

    barnes = near_integer & (lo < hi)
    kummer = ~barnes & kummer_ok & (near_integer | (x >= series_limit))
    series = ~barnes & ~kummer
    if np.any(series & near_integer):
        raise ParameterError("no representation applies for 2*sigma near an integer here")

    out = np.empty(x.shape, dtype=complex)
    for route, mask in ((_w_barnes, barnes), (_w_kummer, kummer), (_w_series, series)):
        if np.any(mask):
            out[mask] = route(rho[mask], sigma[mask], x[mask])
    return out
