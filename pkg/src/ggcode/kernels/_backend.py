"""Backend selection for the hot kernels.

``GGCODE_BACKEND=numpy`` forces the vectorized numpy path; anything else (or
unset) uses numba when it imports cleanly.
"""
from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency, but stay usable
    numba = None

BACKENDS = ("numba", "numpy")

_requested = os.environ.get("GGCODE_BACKEND", "numba").strip().lower() or "numba"
if _requested not in BACKENDS:
    raise ImportError(f"GGCODE_BACKEND must be one of {BACKENDS}, got {_requested!r}")

_active = _requested if (_requested == "numpy" or numba is not None) else "numpy"


def njit(func):
    """``numba.njit`` with caching and released GIL; identity if numba is missing."""
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)


def get_backend() -> str:
    return _active


def set_backend(name: str) -> str:
    """Switch backend at runtime; returns the previous one."""
    global _active
    name = name.lower()
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    previous, _active = _active, name
    return previous
