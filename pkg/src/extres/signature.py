"""Signatures ``gamma|alpha|delta`` and their coefficient transformations.

A series with signature ``gamma|alpha|delta`` has nonzero coefficients only
at the powers ``Z**(delta*N)`` (weak coupling side) and
``Z**(-alpha - gamma*N)`` (strong coupling side), ``N >= 0``.  The
associated transformation is

    T_n = (-1 - n/delta)! (-1 + (alpha + n)/gamma)! / Omega

whose reduced closed forms on each side are implemented by
:func:`transformation_right` and :func:`transformation_left`.  The direct
Omega-algebra evaluation :func:`transformation_omega` is kept as an
independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .gamma_kernel import OmegaNumber, factorial, omega_factorial

__all__ = [
    "OmegaValuedError",
    "Signature",
    "WeakSeries",
    "transformation_right",
    "transformation_left",
    "transformation",
    "transformation_omega",
    "vanishing_pattern",
    "to_uniform",
]


class OmegaValuedError(ValueError):
    """A transformation coefficient is infinite (Omega-valued)."""


@dataclass(frozen=True)
class Signature:
    gamma: int
    alpha: int
    delta: int

    def __post_init__(self):
        for name in ("gamma", "alpha", "delta"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"signature {name} must be an integer")
        if self.gamma < 1 or self.delta < 1:
            raise ValueError("signature needs gamma >= 1 and delta >= 1")

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"gamma|alpha|delta"``, e.g. ``"2|-1|3"``."""
        parts = str(text).replace(" ", "").split("|")
        if len(parts) != 3:
            raise ValueError(f"signature must look like 'g|a|d', got {text!r}")
        try:
            g, a, d = (int(p) for p in parts)
        except ValueError:
            raise ValueError(f"signature entries must be integers, got {text!r}") from None
        return cls(g, a, d)

    def __str__(self) -> str:
        return f"{self.gamma}|{self.alpha}|{self.delta}"

    @property
    def is_uniform(self) -> bool:
        return (self.gamma, self.alpha, self.delta) == (1, 1, 1)


@dataclass(frozen=True)
class WeakSeries:
    """Truncated weak-coupling series ``sum_{n<=p} B_{delta n} Z**(delta n)``.

    ``coeffs`` may hold floats or exact :class:`fractions.Fraction` values;
    they are only converted to floats when divided by the transformation.
    """

    sig: Signature
    coeffs: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise ValueError("a weak series needs at least two coefficients (order p >= 1)")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncated(self, p: int) -> "WeakSeries":
        if not 1 <= p <= self.order:
            raise ValueError(f"cannot truncate an order-{self.order} series to order {p}")
        return WeakSeries(self.sig, self.coeffs[: p + 1])

    def scaled(self, factor) -> "WeakSeries":
        return WeakSeries(self.sig, tuple(factor * b for b in self.coeffs))


def _reduced(sig_num: int, sig_den: int, N: int) -> float:
    # (-1)^N (-1 + num/den)! / N!, the Omega-free head of T on one side
    x = Fraction(sig_num, sig_den) - 1
    if x.denominator == 1 and x < 0:
        raise OmegaValuedError(
            f"coefficient is Omega-valued ({int(x)}! with N={N})"
        )
    return (-1) ** N * factorial(float(x)) / math.factorial(N)


def transformation_right(sig: Signature, N: int) -> float:
    """``T_{delta N} = (-1)**N (-1 + (alpha + delta N)/gamma)! / N!``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return _reduced(sig.alpha + sig.delta * N, sig.gamma, N)


def transformation_left(sig: Signature, N: int) -> float:
    """``T_{-alpha - gamma N} = (-1)**N (-1 + (alpha + gamma N)/delta)! / N!``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return _reduced(sig.alpha + sig.gamma * N, sig.delta, N)


def _side_indices(sig: Signature, n: int) -> tuple[int | None, int | None]:
    right = n // sig.delta if n >= 0 and n % sig.delta == 0 else None
    m = -sig.alpha - n
    left = m // sig.gamma if m >= 0 and m % sig.gamma == 0 else None
    return right, left


def vanishing_pattern(sig: Signature, n: int) -> bool:
    """True when ``T_n`` is allowed to be nonzero for this signature."""
    right, left = _side_indices(sig, n)
    return right is not None or left is not None


def transformation(sig: Signature, n: int) -> float:
    """``T_n`` for any integer ``n`` from the reduced closed forms (0 off-pattern)."""
    right, left = _side_indices(sig, n)
    if right is not None and left is not None:
        raise OmegaValuedError(f"T_{n} is Omega-valued for signature {sig}")
    if right is not None:
        return transformation_right(sig, right)
    if left is not None:
        return transformation_left(sig, left)
    return 0.0


def transformation_omega(sig: Signature, n: int) -> OmegaNumber:
    """``T_n`` evaluated literally in the Omega algebra (cross-check path)."""
    a = omega_factorial(Fraction(-1) - Fraction(n, sig.delta))
    b = omega_factorial(Fraction(-1) + Fraction(sig.alpha + n, sig.gamma))
    return (a * b) / OmegaNumber(1.0, 1)


def to_uniform(series: WeakSeries) -> list[float]:
    """``A_{delta n} = B_{delta n} / T_{delta n}`` for ``n = 0..p``."""
    out = []
    for n, b in enumerate(series.coeffs):
        t = transformation_right(series.sig, n)
        if t == 0:
            raise ZeroDivisionError(f"transformation not invertible at index {n}")
        out.append(float(b) / t if isinstance(b, (int, Fraction)) else b / t)
    return out
