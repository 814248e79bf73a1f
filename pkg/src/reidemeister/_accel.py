"""Optional numba acceleration.

Kernels are written twice: a loop form compiled with ``numba.njit`` and a
vectorised numpy form.  Setting ``REIDEMEISTER_DISABLE_NUMBA=1`` (or running
without numba installed) selects the numpy forms at import time.
"""
from __future__ import annotations

import os

_FLAG = "REIDEMEISTER_DISABLE_NUMBA"

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

USE_NUMBA = _numba is not None and os.environ.get(_FLAG, "").lower() not in ("1", "true", "yes")


def njit(func):
    """Compile ``func`` with numba when available, otherwise return it unchanged."""
    if _numba is None:
        return func
    return _numba.njit(cache=True, nogil=True)(func)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
