"""Generalized factorials and the Omega algebra for negative-integer factorials.

The factorial is extended to the reals through ``x! = Gamma(x + 1)``.  At the
negative integers it is infinite; those values are kept exact as multiples of
a formal infinite unit ``Omega = (-1)!`` using

    n! (-1 - n)! (-1)**n = Omega      (n >= 0)

so that ratios such as ``(-2)!/(-1)! = -1`` cancel algebraically instead of
being approximated by large floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

__all__ = [
    "InfiniteFactorialError",
    "OmegaNumber",
    "factorial",
    "omega_factorial",
    "generalized_binomial",
]


class InfiniteFactorialError(ValueError):
    """Raised when a factorial is requested at a negative integer."""


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


@dataclass(frozen=True)
class OmegaNumber:
    """A real number times an integer power of the infinite unit Omega.

    ``finite * Omega**omega_power``.  A zero finite part is exact zero, and is
    normalised to ``omega_power = 0``.
    """

    finite: float
    omega_power: int = 0

    def __post_init__(self):
        if self.finite == 0 and self.omega_power != 0:
            object.__setattr__(self, "omega_power", 0)

    @property
    def is_finite(self) -> bool:
        return self.omega_power <= 0

    @property
    def is_zero(self) -> bool:
        return self.finite == 0 or self.omega_power < 0

    def __mul__(self, other):
        if isinstance(other, OmegaNumber):
            return OmegaNumber(self.finite * other.finite, self.omega_power + other.omega_power)
        if isinstance(other, Real):
            return OmegaNumber(self.finite * other, self.omega_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, OmegaNumber):
            if other.finite == 0:
                raise ZeroDivisionError("division by an exact zero OmegaNumber")
            return OmegaNumber(self.finite / other.finite, self.omega_power - other.omega_power)
        if isinstance(other, Real):
            return OmegaNumber(self.finite / other, self.omega_power)
        return NotImplemented

    def __neg__(self):
        return OmegaNumber(-self.finite, self.omega_power)

    def value(self) -> float:
        """Collapse to an ordinary real.

        Negative powers of Omega vanish.  A surviving positive power is an
        error: physical quantities must have cancelled every Omega.
        """
        if self.omega_power < 0:
            return 0.0
        if self.omega_power > 0:
            raise InfiniteFactorialError(
                f"value carries an uncancelled Omega**{self.omega_power}"
            )
        return float(self.finite)

    def __str__(self) -> str:
        if self.omega_power == 0:
            return repr(self.finite)
        return f"{self.finite!r}*Omega**{self.omega_power}"


def _sinpi(x: float) -> float:
    # reduce first so sin(pi x) keeps full relative accuracy near integers
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def factorial(x: float) -> float:
    """Return ``x! = Gamma(x + 1)`` for real ``x`` away from the negative integers.

    Negative non-integer arguments go through the reflection identity
    ``x! (-1 - x)! sin(pi x) = -pi`` (``Gamma(z) Gamma(1 - z) = pi / sin(pi z)``
    at ``z = x + 1``).
    """
    x = float(x)
    if x < 0 and _is_integer(x):
        raise InfiniteFactorialError(
            f"infinite factorial at {x:g}; use omega_factorial"
        )
    if x >= -0.5:
        return math.gamma(x + 1.0)
    # reflection keeps the large-argument gamma on the positive side
    return -math.pi / (_sinpi(x) * math.gamma(-x))


def omega_factorial(n) -> OmegaNumber:
    """Factorial as an :class:`OmegaNumber`.

    For negative integers, ``(-1 - m)! = (-1)**m Omega / m!`` with ``m >= 0``.
    Any other real argument gives an ordinary finite value.
    """
    if not _is_integer(n):
        return OmegaNumber(factorial(n), 0)
    n = int(n)
    if n >= 0:
        return OmegaNumber(float(math.factorial(n)), 0)
    m = -1 - n
    return OmegaNumber((-1.0) ** m / math.factorial(m), 1)


def generalized_binomial(x: float, i: int) -> float:
    """``x!/(i!(x - i)!)`` via the falling product ``x(x-1)...(x-i+1)/i!``.

    The falling product is finite for every real ``x`` (all Omega factors of
    the factorial ratio cancel) and vanishes exactly when ``x`` is a
    nonnegative integer smaller than ``i``.
    """
    if i < 0:
        raise ValueError("binomial index must be nonnegative")
    if _is_integer(x) and 0 <= x < i:
        return 0.0
    out = 1.0
    for k in range(i):
        out *= (x - k) / (k + 1)
    return out
