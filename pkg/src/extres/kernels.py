"""Hot loops of the resummation integral.

Both integral forms share the factor

    R(s) = exp(-s) P(s) - sum_{N<K} c_N s**N,    P(s) = sum_i poly[i] s**i

where ``c_N`` are the Taylor coefficients of ``exp(-s) P(s)``.  Subtracting
the first ``K`` Taylor terms removes the non-integrable part at ``t = 0``;
for ``|s| <= 1`` the remainder is summed directly from its Taylor series to
avoid the cancellation in the difference.

Each kernel has a vectorised numpy implementation and an element loop
compiled with numba.  The public names dispatch on ``_jit.USE_NUMBA``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import _jit

__all__ = [
    "taylor_coefficients",
    "taylor_remainder",
    "first_form_integrand",
    "taylor_remainder_numpy",
    "taylor_remainder_numba",
    "first_form_integrand_numpy",
    "first_form_integrand_numba",
]

SERIES_RADIUS = 1.0
_EXTRA_TERMS = 28


def taylor_coefficients(poly: np.ndarray, count: int | None = None) -> np.ndarray:
    """Taylor coefficients of ``exp(-s) * sum_i poly[i] s**i``."""
    poly = np.asarray(poly, dtype=complex)
    if count is None:
        count = len(poly) + _EXTRA_TERMS
    c = np.zeros(count, dtype=complex)
    for N in range(count):
        for i in range(min(N, len(poly) - 1) + 1):
            c[N] += poly[i] * (-1) ** (N - i) / math.factorial(N - i)
    return c


def _horner(coef, s):
    out = np.zeros_like(s)
    for c in coef[::-1]:
        out = out * s + c
    return out


def taylor_remainder_numpy(s, poly, taylor, K):
    s = np.asarray(s, dtype=complex)
    out = np.empty_like(s)
    near = np.abs(s) <= SERIES_RADIUS
    if near.any():
        sn = s[near]
        out[near] = _horner(taylor[K:], sn) * sn**K
    far = ~near
    if far.any():
        sf = s[far]
        out[far] = np.exp(-sf) * _horner(poly, sf) - _horner(taylor[:K], sf)
    return out


def _ipow(x, k):
    out = 1.0 + 0j
    for _ in range(k):
        out *= x
    return out


def _remainder_loop(s, poly, taylor, K):
    n = s.shape[0]
    out = np.empty(n, dtype=np.complex128)
    r2 = SERIES_RADIUS * SERIES_RADIUS
    near = np.empty(n, dtype=np.int64)
    far = np.empty(n, dtype=np.int64)
    nn = 0
    nf = 0
    for j in range(n):
        x = s[j]
        if x.real * x.real + x.imag * x.imag <= r2:
            near[nn] = j
            nn += 1
        else:
            far[nf] = j
            nf += 1
    # Horner across points rather than per point: the inner loop has no
    # dependency chain, so it runs at throughput instead of latency
    sn = np.empty(nn, dtype=np.complex128)
    for k in range(nn):
        sn[k] = s[near[k]]
    acc = np.zeros(nn, dtype=np.complex128)
    for N in range(taylor.shape[0] - 1, K - 1, -1):
        c = taylor[N]
        for k in range(nn):
            acc[k] = acc[k] * sn[k] + c
    for k in range(nn):
        out[near[k]] = acc[k] * _ipow(sn[k], K)
    for k in range(nf):
        x = s[far[k]]
        a = 0j
        for i in range(poly.shape[0] - 1, -1, -1):
            a = a * x + poly[i]
        head = 0j
        for N in range(K - 1, -1, -1):
            head = head * x + taylor[N]
        out[far[k]] = cmath.exp(-x) * a - head
    return out


_ipow = _jit.njit(_ipow)
taylor_remainder_numba = _jit.njit(_remainder_loop)


def first_form_integrand_numpy(t, gamma, alpha, delta, wz, poly, taylor, K):
    t = np.asarray(t, dtype=float)
    s = (wz * t) ** delta
    return gamma * t ** (alpha - 1.0) * np.exp(-(t**gamma)) * taylor_remainder_numpy(s, poly, taylor, K)


def _rpow(x, k):
    # x**k for a real x > 0 and integer k by repeated multiplication
    out = 1.0
    for _ in range(abs(k)):
        out *= x
    return out if k >= 0 else 1.0 / out


def _first_form_loop(t, gamma, alpha, delta, wz, poly, taylor, K):
    n = t.shape[0]
    s = np.empty(n, dtype=np.complex128)
    for j in range(n):
        s[j] = _ipow(wz * t[j], delta)
    r = taylor_remainder_numba(s, poly, taylor, K)
    out = np.empty(n, dtype=np.complex128)
    for j in range(n):
        tj = t[j]
        out[j] = gamma * _rpow(tj, alpha - 1) * math.exp(-_rpow(tj, gamma)) * r[j]
    return out


_rpow = _jit.njit(_rpow)
first_form_integrand_numba = _jit.njit(_first_form_loop)


def taylor_remainder(s, poly, taylor, K):
    """``R(s)`` for an array of complex ``s`` (see module docstring)."""
    if _jit.USE_NUMBA:
        return taylor_remainder_numba(
            np.ascontiguousarray(s, dtype=np.complex128),
            np.asarray(poly, dtype=np.complex128),
            np.asarray(taylor, dtype=np.complex128),
            int(K),
        )
    return taylor_remainder_numpy(s, poly, taylor, K)


def first_form_integrand(t, gamma, alpha, delta, wz, poly, taylor, K):
    """``gamma t**(alpha-1) exp(-t**gamma) R((wz t)**delta)`` on a real grid ``t``."""
    if _jit.USE_NUMBA:
        return first_form_integrand_numba(
            np.ascontiguousarray(t, dtype=np.float64),
            int(gamma),
            int(alpha),
            int(delta),
            complex(wz),
            np.asarray(poly, dtype=np.complex128),
            np.asarray(taylor, dtype=np.complex128),
            int(K),
        )
    return first_form_integrand_numpy(t, gamma, alpha, delta, wz, poly, taylor, K)
