"""Extension of a truncated series in the basis ``(omega Z)_i``.

Given uniform coefficients ``A_{delta n}`` (``n = 0..p``) the extension
coordinates at parameter ``omega`` are

    A^i(omega) = sum_{n<=i} C(i, n) (-1)**(n-i) A_{delta n} / omega**(delta n)

and the free parameter is fixed by ``A^p(omega) = 0``.  That is a degree-p
polynomial in ``u = omega**-delta``; each of its roots gives ``delta`` values
of ``omega``, of which the one closest to the real axis is kept.  Among the
``p`` candidates the one lying closest to the others (largest weight) is
selected: an exact extension would make it a double root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .gamma_kernel import generalized_binomial
from .signature import (
    Signature,
    WeakSeries,
    to_uniform,
    transformation,
    vanishing_pattern,
)

__all__ = [
    "OrderReductionError",
    "ExtensionResult",
    "phi",
    "phi_star",
    "coordinate_polynomial",
    "a_coefficients",
    "root_polynomial",
    "omega_roots",
    "weights",
    "weight",
    "select_root",
    "extend",
    "coefficient_at",
    "strong_coupling_head",
    "predict_next",
    "uniform_coefficient_at",
]

ROOT_TOL = 1e-12
COINCIDENT = 1e-13
TIE_RTOL = 1e-9


class OrderReductionError(ValueError):
    """``A^p`` degenerates: the lower-order extension is already exact."""

    def __init__(self, message: str, reduced_degree: int):
        super().__init__(message)
        self.reduced_degree = reduced_degree


def phi(poly: Sequence) -> list:
    """Coordinates ``A^i`` of the unique extension of ``sum A_n Z**n``.

    Generic over the coefficient type, so integer or ``Fraction`` input is
    transformed exactly.
    """
    a = list(poly)
    return [
        sum(math.comb(i, n) * (-1) ** (i - n) * a[n] for n in range(i + 1))
        for i in range(len(a))
    ]


def phi_star(coords: Sequence) -> list:
    """Inverse of :func:`phi`: ``A_n = sum_{i<=n} C(n, i) A^i``."""
    v = list(coords)
    return [
        sum(math.comb(n, i) * v[i] for i in range(n + 1))
        for n in range(len(v))
    ]


def coordinate_polynomial(A_uniform: Sequence, i: int) -> list:
    """Coefficients, in ascending powers of ``omega``, of ``omega**i A^i(omega)``.

    Uniform (``delta = 1``) form, exact for integer or rational input.
    """
    a = list(A_uniform)
    out = [0] * (i + 1)
    for n in range(i + 1):
        out[i - n] += math.comb(i, n) * (-1) ** (i - n) * a[n]
    return out


def a_coefficients(A_uniform: Sequence, omega: complex, sig: Signature) -> np.ndarray:
    """``A^i(omega)`` for ``i = 0..p`` (``p = len(A_uniform) - 1``)."""
    if omega == 0:
        raise ValueError("parameter must be nonzero")
    a = np.asarray(A_uniform, dtype=complex)
    p = len(a) - 1
    scaled = a / complex(omega) ** (sig.delta * np.arange(p + 1))
    return np.array(phi(scaled), dtype=complex)


def root_polynomial(A_uniform: Sequence) -> np.ndarray:
    """Ascending coefficients of ``A^p`` as a polynomial in ``u = omega**-delta``."""
    a = np.asarray(A_uniform, dtype=float)
    p = len(a) - 1
    return np.array([math.comb(p, n) * (-1) ** (n - p) * a[n] for n in range(p + 1)])


def _polish(coef_desc: np.ndarray, u: complex) -> complex:
    deriv = np.polyder(coef_desc)
    best, best_res = u, abs(np.polyval(coef_desc, u))
    for _ in range(4):
        d = np.polyval(deriv, u)
        if d == 0:
            break
        u = u - np.polyval(coef_desc, u) / d
        res = abs(np.polyval(coef_desc, u))
        if res < best_res:
            best, best_res = u, res
    return best


def _representative(u: complex, delta: int) -> complex:
    # principal delta-th root of 1/u: argument in (-pi/delta, pi/delta]
    w = complex(1.0 / u) ** (1.0 / delta)
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    return w


def weights(roots: Sequence[complex]) -> np.ndarray:
    """Closeness weights ``sum_{j != i} 1/|omega_j - omega_i|**2``.

    Coincident roots (within ``1e-13``) get ``+inf``.  A single root gets 0.
    """
    r = np.asarray(roots, dtype=complex)
    out = np.zeros(len(r))
    for i in range(len(r)):
        for j in range(len(r)):
            if i == j:
                continue
            dist = abs(r[j] - r[i])
            out[i] += np.inf if dist < COINCIDENT else 1.0 / dist**2
    return out


def weight(roots: Sequence[complex], i: int) -> float:
    if len(roots) < 2:
        raise ValueError("weight needs at least two roots")
    return float(weights(roots)[i])


def select_root(roots: Sequence[complex], wts: Sequence[float]) -> int:
    """Index of the largest weight.

    Ties (within a relative ``1e-9``) prefer nonnegative imaginary part, then
    smaller ``|Im|``, then smaller ``|omega - 1|``.
    """
    if len(roots) == 0:
        raise ValueError("no roots to select from")
    wts = np.asarray(wts, dtype=float)
    top = np.max(wts)

    def tied(w):
        if np.isinf(top):
            return np.isinf(w)
        return w >= top - TIE_RTOL * abs(top)

    cands = [i for i in range(len(roots)) if tied(wts[i])]
    return min(
        cands,
        key=lambda i: (
            complex(roots[i]).imag < 0,
            abs(complex(roots[i]).imag),
            abs(complex(roots[i]) - 1.0),
        ),
    )


def omega_roots(A_uniform: Sequence, sig: Signature, p: int | None = None) -> np.ndarray:
    """The ``p`` candidate parameters solving ``A^p(omega) = 0``.

    One representative per ``delta``-tuplet, sorted by weight (descending).
    """
    a = list(A_uniform)
    if p is None:
        p = len(a) - 1
    a = a[: p + 1]
    if len(a) != p + 1 or p < 1:
        raise ValueError("need A_0..A_p with p >= 1")
    coef = root_polynomial(a)
    if coef[-1] == 0:
        nz = np.nonzero(coef)[0]
        deg = int(nz[-1]) if len(nz) else 0
        raise OrderReductionError(
            "order reduction: A^p identically satisfied; the "
            f"order-{p - 1} extension is already exact (reduced degree {deg})",
            deg,
        )
    if coef[0] == 0:
        raise OrderReductionError(
            "order reduction: A_0 = 0 puts a root at omega = infinity", p - 1
        )
    desc = coef[::-1].astype(complex)
    us = np.roots(desc)
    us = np.array([_polish(desc, u) for u in us])
    roots = np.array([_representative(u, sig.delta) for u in us])
    wts = weights(roots)
    order = sorted(
        range(p),
        key=lambda i: (
            -float(f"{wts[i]:.9g}"),
            roots[i].imag < 0,
            abs(roots[i].imag),
            abs(roots[i] - 1),
        ),
    )
    return roots[order]


@dataclass(frozen=True)
class ExtensionResult:
    """A p-order extension at the selected root ``omega = roots[chosen]``."""

    sig: Signature
    order: int
    roots: np.ndarray
    weights: np.ndarray
    chosen: int
    a_coeffs: np.ndarray
    uniform: tuple = ()
    series: WeakSeries | None = None

    @property
    def omega(self) -> complex:
        return complex(self.roots[self.chosen])

    @property
    def residual(self) -> float:
        """``|A^p(omega)|`` relative to its largest term."""
        a = np.asarray(self.uniform, dtype=complex)
        p = self.order
        terms = np.array(
            [math.comb(p, n) * (-1) ** (n - p) * a[n] / self.omega ** (self.sig.delta * n)
             for n in range(p + 1)]
        )
        return float(abs(terms.sum()) / np.max(np.abs(terms)))

    def at_root(self, index: int) -> "ExtensionResult":
        """The same extension re-anchored on another candidate root."""
        omega = complex(self.roots[index])
        coeffs = a_coefficients(self.uniform, omega, self.sig)[: self.order]
        return replace(self, chosen=index, a_coeffs=coeffs)


def extend(series: WeakSeries) -> ExtensionResult:
    """Run the full extension procedure on a weak-coupling series."""
    A = to_uniform(series)
    p = series.order
    roots = omega_roots(A, series.sig, p)
    wts = weights(roots)
    idx = select_root(roots, wts)
    coeffs = a_coefficients(A, roots[idx], series.sig)[:p]
    return ExtensionResult(
        sig=series.sig,
        order=p,
        roots=roots,
        weights=wts,
        chosen=idx,
        a_coeffs=coeffs,
        uniform=tuple(A),
        series=series,
    )


def uniform_coefficient_at(ext: ExtensionResult, n: int) -> complex:
    """``Abar_n = omega**n sum_i C(n/delta, i) A^i(omega)``."""
    x = n / ext.sig.delta
    s = sum(generalized_binomial(x, i) * complex(c) for i, c in enumerate(ext.a_coeffs))
    return ext.omega**n * s


def coefficient_at(ext: ExtensionResult, n: int) -> complex:
    """Extended coefficient ``Bbar_n = T_n Abar_n`` at any integer power ``n``."""
    if not vanishing_pattern(ext.sig, n):
        return 0j
    return transformation(ext.sig, n) * uniform_coefficient_at(ext, n)


def strong_coupling_head(ext: ExtensionResult, N: int = 0) -> complex:
    """Estimate of the N-th strong coupling coefficient, ``(gamma/delta) Bbar_{-alpha-gamma N}``."""
    sig = ext.sig
    return sig.gamma / sig.delta * coefficient_at(ext, -sig.alpha - sig.gamma * N)


def predict_next(ext: ExtensionResult) -> complex:
    """The extension's estimate of the first unknown coefficient ``B_{delta(p+1)}``."""
    return coefficient_at(ext, ext.sig.delta * (ext.order + 1))
