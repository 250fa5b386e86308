"""The two test models and their independent oracles.

* ``zero-dim``: ``E(lam) = sqrt(2) int_0^inf exp(-x**2/2 - lam x**4/4) dx``,
  signature ``2|1|4``.
* ``anharmonic``: ground state of ``p**2/2 + x**2/2 + lam x**4/4``,
  signature ``2|-1|3``.

The oracles here (direct quadrature and Hamiltonian diagonalisation) share
no code with the extension/resummation pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate, linalg, optimize

from .signature import Signature, WeakSeries

__all__ = [
    "ModelSpec",
    "MODELS",
    "CoefficientUnavailable",
    "OracleError",
    "zero_dim_series",
    "anharmonic_series",
    "bender_wu_generate",
    "model_series",
    "oracle_zero_dim",
    "oracle_zero_dim_strong_limit",
    "oracle_ground_state",
    "oracle_strong_limit",
]

ANHARMONIC_PRINTED = (
    Fraction(1, 2),
    Fraction(3, 16),
    Fraction(-21, 128),
    Fraction(333, 1024),
    Fraction(-30885, 32768),
    Fraction(916731, 262144),
)


class CoefficientUnavailable(ValueError):
    pass


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    name: str
    sig: Signature
    coeffs_source: str
    max_order: int | None


MODELS = {
    "zero-dim": ModelSpec("zero-dim", Signature(2, 1, 4), "generated", None),
    "anharmonic": ModelSpec("anharmonic", Signature(2, -1, 3), "printed", len(ANHARMONIC_PRINTED) - 1),
}


def zero_dim_series(p: int) -> WeakSeries:
    """``B_{4N} = (-1)**N (2N - 1/2)! / N!`` for ``N = 0..p``."""
    if p < 1:
        raise ValueError("order must be at least 1")
    coeffs = [(-1) ** N * math.gamma(2 * N + 0.5) / math.factorial(N) for N in range(p + 1)]
    return WeakSeries(MODELS["zero-dim"].sig, coeffs)


def bender_wu_generate(p: int) -> list[Fraction]:
    """Exact ground-state coefficients of ``x**2/2 + lam x**4/4`` in powers of ``lam``.

    Writes ``psi = exp(-x**2/2) sum_n g**n phi_n(x**2)`` with ``g = lam/4``;
    each order is a polynomial solved from the top power down.
    """
    E = [Fraction(1, 2)]
    phi = [{0: Fraction(1)}]
    for n in range(1, p + 1):
        prev = phi[n - 1]
        cur: dict[int, Fraction] = {}
        for j in range(2 * n, 0, -1):
            acc = (j + 1) * (2 * j + 1) * cur.get(j + 1, 0) - prev.get(j - 2, 0)
            acc += sum(E[k] * phi[n - k].get(j, 0) for k in range(1, n))
            cur[j] = Fraction(acc) / (2 * j)
        phi.append(cur)
        E.append(-cur[1])
    return [e / 4**n for n, e in enumerate(E)]


def anharmonic_series(p: int, source: str = "printed") -> WeakSeries:
    """Ground-state weak-coupling series to order ``p`` as exact rationals."""
    if p < 1:
        raise ValueError("order must be at least 1")
    if source == "printed":
        if p >= len(ANHARMONIC_PRINTED):
            raise CoefficientUnavailable(
                f"coefficient unavailable beyond order {len(ANHARMONIC_PRINTED) - 1}; enable generator"
            )
        coeffs = ANHARMONIC_PRINTED[: p + 1]
    elif source == "generated":
        coeffs = bender_wu_generate(p)
    else:
        raise ValueError(f"unknown coefficient source {source!r}")
    return WeakSeries(MODELS["anharmonic"].sig, coeffs)


def model_series(name: str, p: int, source: str | None = None) -> WeakSeries:
    if name == "zero-dim":
        return zero_dim_series(p)
    if name == "anharmonic":
        if source is None:
            source = "printed" if p < len(ANHARMONIC_PRINTED) else "generated"
        return anharmonic_series(p, source)
    raise KeyError(f"unknown model {name!r}")


def oracle_zero_dim(lam: float) -> float:
    """Direct quadrature of ``sqrt(2) int_0^inf exp(-x**2/2 - lam x**4/4) dx``."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    # exp(-x**2/2) < 1e-36 beyond x = 13
    val, err = integrate.quad(
        lambda x: math.exp(-0.5 * x * x - 0.25 * lam * x**4), 0.0, 13.0, epsabs=1e-14, epsrel=1e-13, limit=200
    )
    if err > 1e-12:
        raise OracleError(f"zero-dim quadrature error {err:.1e}")
    return math.sqrt(2.0) * val


def oracle_zero_dim_strong_limit() -> float:
    """``sqrt(2) int_0^inf exp(-x**4/4) dx``, the coefficient of ``lam**(-1/4)``."""
    val, _ = integrate.quad(lambda x: math.exp(-0.25 * x**4), 0.0, 7.0, epsabs=1e-14, epsrel=1e-13)
    return math.sqrt(2.0) * val


def _hamiltonian(mass2: float, lam: float, freq: float, size: int) -> np.ndarray:
    # x = (a + a^dagger)/sqrt(2 freq); padded by 4 so x**4 is exact on the kept block
    n = size + 4
    a = np.diag(np.sqrt(np.arange(1.0, n)), 1)
    x = (a + a.T) / math.sqrt(2.0 * freq)
    q = a.T - a
    p2 = -0.5 * freq * (q @ q)
    x2 = x @ x
    h = 0.5 * p2 + 0.5 * mass2 * x2 + 0.25 * lam * (x2 @ x2)
    return h[:size, :size]


def _lowest(mass2, lam, freq, size):
    h = _hamiltonian(mass2, lam, freq, size)
    return float(linalg.eigh(h, eigvals_only=True, subset_by_index=[0, 0])[0])


def _best_frequency(mass2: float, lam: float) -> float:
    # variational frequency of a Gaussian trial state, refined on a small basis
    guess = optimize.brentq(lambda w: w**3 - mass2 * w - 1.5 * lam, 1e-6, 1e3)
    res = optimize.minimize_scalar(
        lambda lw: _lowest(mass2, lam, math.exp(lw), 24),
        bounds=(math.log(guess) - 1.0, math.log(guess) + 1.0),
        method="bounded",
    )
    return math.exp(res.x)


def _diagonalise(mass2: float, lam: float, size: int, tol: float) -> float:
    freq = _best_frequency(mass2, lam)
    e1 = _lowest(mass2, lam, freq, size)
    e2 = _lowest(mass2, lam, freq, 2 * size)
    if abs(e1 - e2) > tol:
        raise OracleError(f"basis not converged: {e1!r} vs {e2!r}")
    return e2


@lru_cache(maxsize=64)
def oracle_ground_state(lam: float, size: int = 200, tol: float = 1e-9) -> float:
    """Ground-state energy of ``p**2/2 + x**2/2 + lam x**4/4`` by diagonalisation.

    The harmonic basis frequency is optimised first; the result is accepted
    only when doubling the basis changes it by less than ``tol``.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        return 0.5
    return _diagonalise(1.0, float(lam), size, tol)


@lru_cache(maxsize=1)
def oracle_strong_limit(size: int = 200, tol: float = 1e-9) -> float:
    """Ground-state energy of the pure quartic ``p**2/2 + x**4/4``."""
    return _diagonalise(0.0, 1.0, size, tol)
