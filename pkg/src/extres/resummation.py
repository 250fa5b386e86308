"""Finite-coupling value of an extension's right part.

With ``F(s) = exp(-s) sum_{i<p} A^i(omega) (-s)**i / i!`` the summed right
part is

    gamma * int_0^inf dt/t exp(-t**gamma) t**alpha F((omega Z t)**delta)

or, after ``u = omega Z t``,

    gamma * int_0^inf du/u exp(-(u/omega Z)**gamma) (u/omega Z)**alpha F(u**delta).

For ``alpha <= 0`` the first ``K = #{N >= 0 : alpha + delta N <= 0}`` Taylor
terms of ``F`` are not integrable at the origin.  They are subtracted inside
the integral and their exact contribution ``Bbar_{delta N} Z**(delta N)`` is
added back.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from .extension import ExtensionResult, coefficient_at, strong_coupling_head
from .kernels import first_form_integrand, taylor_coefficients, taylor_remainder
from .quadrature import QuadratureError, envelope_cutoff, integrate_semi_infinite
from .signature import Signature

__all__ = [
    "ResumEstimate",
    "subtracted_count",
    "resum",
    "resum_coupling",
    "resum_second_form",
    "resum_mp",
    "weak_expansion_fit",
    "resum_first_order_closed_form",
    "left_right_consistency",
]

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class ResumEstimate:
    """Estimated sum at coupling ``g = Z**delta``."""

    value: complex
    quad_error: float
    subtracted_terms: int
    coupling: float
    tol: float = DEFAULT_TOL
    converged: bool = True

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def format(self, digits: int = 7) -> str:
        """``"re"`` or ``"re ± |im|i"`` at ``digits`` decimals."""
        re = f"{self.value.real:.{digits}f}"
        im = abs(self.value.imag)
        if round(im, digits) == 0:
            return re
        return f"{re} ± {im:.{digits}f}i"


def subtracted_count(sig: Signature) -> int:
    """Number of Taylor terms not integrable at the origin."""
    if sig.alpha > 0:
        return 0
    return -sig.alpha // sig.delta + 1


def _poly(ext: ExtensionResult) -> np.ndarray:
    return np.array(
        [complex(a) * (-1) ** i / math.factorial(i) for i, a in enumerate(ext.a_coeffs)]
    )


def _added_back(ext: ExtensionResult, Z: float, K: int) -> complex:
    d = ext.sig.delta
    return sum(coefficient_at(ext, d * N) * Z ** (d * N) for N in range(K))


def _finish(ext, Z, tol, strict, K, run):
    try:
        value, err = run()
        converged = True
    except QuadratureError as exc:
        if strict:
            raise
        value, err, converged = exc.value, exc.error, False
    value = complex(value) + _added_back(ext, Z, K)
    return ResumEstimate(
        value=value,
        quad_error=float(err),
        subtracted_terms=K,
        coupling=Z**ext.sig.delta,
        tol=tol,
        converged=converged,
    )


def resum(ext: ExtensionResult, Z: float, tol: float = DEFAULT_TOL, *, strict: bool = True) -> ResumEstimate:
    """Sum of the extension at ``Z > 0`` (coupling ``g = Z**delta``).

    Integrates along the real ``t`` axis with ``omega`` possibly complex.
    With ``strict=False`` a quadrature failure returns the best estimate
    flagged ``converged=False`` instead of raising.
    """
    if not Z > 0:
        raise ValueError("Z must be positive")
    sig = ext.sig
    K = subtracted_count(sig)
    poly = _poly(ext)
    taylor = taylor_coefficients(poly)
    wz = ext.omega * Z

    def f(t):
        return first_form_integrand(t, sig.gamma, sig.alpha, sig.delta, wz, poly, taylor, K)

    def run():
        return integrate_semi_infinite(f, tol, t_max=envelope_cutoff(sig.gamma))

    return _finish(ext, Z, tol, strict, K, run)


def resum_coupling(ext: ExtensionResult, g: float, tol: float = DEFAULT_TOL, **kw) -> ResumEstimate:
    """:func:`resum` at coupling ``g`` (``Z = g**(1/delta)``)."""
    return resum(ext, g ** (1.0 / ext.sig.delta), tol, **kw)


def resum_second_form(ext: ExtensionResult, Z: float, tol: float = DEFAULT_TOL, *, strict: bool = True) -> ResumEstimate:
    """Same sum from the ``u = omega Z t`` form, integrated along real ``u``.

    Rotating the contour onto the real ``u`` axis needs
    ``|gamma arg(omega)| < pi/2`` so that ``exp(-(u/omega Z)**gamma)`` decays.
    """
    sig = ext.sig
    if sig.gamma * abs(cmath.phase(ext.omega)) >= 0.5 * math.pi:
        raise ValueError("the u-axis form needs |gamma arg(omega)| < pi/2")
    K = subtracted_count(sig)
    poly = _poly(ext)
    taylor = taylor_coefficients(poly)
    wz = ext.omega * Z

    def f(u):
        r = taylor_remainder(u.astype(complex) ** sig.delta, poly, taylor, K)
        x = u / wz
        return sig.gamma / u * np.exp(-(x**sig.gamma)) * x**sig.alpha * r

    # exp(-(u/omega Z)**gamma) carries the decay once Taylor terms are subtracted
    u_max = max(envelope_cutoff(sig.delta), abs(wz) * envelope_cutoff(sig.gamma))

    def run():
        return integrate_semi_infinite(f, tol, t_max=u_max)

    return _finish(ext, Z, tol, strict, K, run)


def resum_mp(ext: ExtensionResult, Z, dps: int = 30) -> mpmath.mpc:
    """High-precision evaluation of :func:`resum` with mpmath.

    The integrand is rebuilt in mpmath arithmetic from the double-precision
    extension coordinates; used where double-precision noise would swamp the
    quantity under test (e.g. recovering high-order Taylor coefficients).
    """
    sig = ext.sig
    K = subtracted_count(sig)
    with mpmath.workdps(dps):
        Z = mpmath.mpf(Z)
        wz = mpmath.mpc(ext.omega) * Z
        poly = [mpmath.mpc(complex(a)) * (-1) ** i / mpmath.factorial(i) for i, a in enumerate(ext.a_coeffs)]
        n_terms = len(poly) + dps + 20
        taylor = [
            mpmath.fsum(poly[i] * (-1) ** (N - i) / mpmath.factorial(N - i) for i in range(min(N, len(poly) - 1) + 1))
            for N in range(n_terms)
        ]

        def remainder(s):
            if abs(s) <= 1:
                return mpmath.polyval(taylor[K:][::-1], s) * s**K
            head = mpmath.polyval(taylor[:K][::-1], s) if K else 0
            return mpmath.exp(-s) * mpmath.polyval(poly[::-1], s) - head

        def f(t):
            return sig.gamma * t ** (sig.alpha - 1) * mpmath.exp(-(t**sig.gamma)) * remainder((wz * t) ** sig.delta)

        knee = 1 / abs(wz)
        points = sorted({mpmath.mpf(0), knee / 10, knee, mpmath.mpf(1), mpmath.inf}, key=lambda v: float(v))
        value = mpmath.quad(f, points)
        back = sum(
            mpmath.mpc(coefficient_at(ext, sig.delta * N)) * Z ** (sig.delta * N) for N in range(K)
        )
        return +(value + back)


def weak_expansion_fit(ext: ExtensionResult, samples: int = 16, degree: int = 12, gmax: float = 0.02, dps: int = 30) -> list[float]:
    """Taylor coefficients in ``g = Z**delta`` of the summed extension.

    Fits a polynomial of ``degree`` through :func:`resum_mp` at ``samples``
    Chebyshev points of ``(0, gmax]`` and returns the first ``p + 1``
    coefficients of the real part.  The fit runs in the scaled variable
    ``g/gmax`` to keep the normal equations well conditioned.
    """
    d = ext.sig.delta
    with mpmath.workdps(dps):
        xs = [(1 + mpmath.cos(mpmath.pi * (k + mpmath.mpf(0.5)) / samples)) / 2 for k in range(samples)]
        rows = [[x**j for j in range(degree + 1)] for x in xs]
        rhs = [mpmath.re(resum_mp(ext, (x * gmax) ** (mpmath.mpf(1) / d), dps)) for x in xs]
        sol, _ = mpmath.qr_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
        return [float(sol[k] / mpmath.mpf(gmax) ** k) for k in range(ext.order + 1)]


def resum_first_order_closed_form(lam: float, tol: float = DEFAULT_TOL) -> float:
    """Explicit first-order sum for the quartic oscillator ground state.

    ``1/2 + 2 int dt/t**2 exp(-t**2) (exp(-lam (w t)**3) - 1) (-1/(4 sqrt(pi)))``
    with ``w**3 = 3 sqrt(pi)/4``; integrated with scipy's QUADPACK so it shares
    no code with :func:`resum`.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    root_pi = math.sqrt(math.pi)
    w3 = 0.75 * root_pi
    pref = -1.0 / (4.0 * root_pi)

    def f(t):
        if t == 0.0:
            return 0.0
        return 2.0 / t**2 * math.exp(-t * t) * math.expm1(-lam * w3 * t**3) * pref

    val, _ = integrate.quad(f, 0.0, np.inf, epsabs=tol * 1e-2, epsrel=tol * 1e-2, limit=400)
    return 0.5 + val


def left_right_consistency(ext: ExtensionResult, Z_large: float, terms: int = 2, tol: float = DEFAULT_TOL) -> float:
    """Relative gap between the integral and its strong-coupling series at large ``Z``."""
    sig = ext.sig
    direct = resum(ext, Z_large, tol).value
    series = sum(
        strong_coupling_head(ext, N) * Z_large ** (-sig.alpha - sig.gamma * N)
        for N in range(terms)
    )
    return abs(direct - series) / abs(direct)
