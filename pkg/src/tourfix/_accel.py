"""Optional numba acceleration.

Set ``TOURFIX_DISABLE_NUMBA=1`` to force the pure-numpy fallback kernels even
when numba is importable.
"""
from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

_disabled = os.environ.get("TOURFIX_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

HAVE_NUMBA = numba is not None and not _disabled


def njit(f=None, **options):
    """``numba.njit`` when available and enabled, identity otherwise."""
    if not HAVE_NUMBA:
        return f if f is not None else (lambda g: g)
    options.setdefault("cache", True)
    if f is None:
        return lambda g: numba.njit(g, **options)
    return numba.njit(f, **options)
