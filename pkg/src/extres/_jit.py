"""Optional numba acceleration.

Setting ``EXTRES_DISABLE_NUMBA=1`` in the environment (or running without
numba installed) makes :func:`njit` a no-op so every kernel runs its plain
numpy/python path.
"""

from __future__ import annotations

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("EXTRES_DISABLE_NUMBA", "0") not in ("1", "true", "yes")


def njit(func):
    """Compile ``func`` in nopython mode when acceleration is enabled."""
    if not HAS_NUMBA:
        return func
    return numba.njit(cache=True, fastmath=False)(func)
