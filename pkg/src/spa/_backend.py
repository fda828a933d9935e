"""Selects the kernel implementation for the hot loops.

Two interchangeable modules provide the same functions: `_kernels_numba`
(JIT compiled, the default) and `_kernels_numpy` (vectorized reference).
Set SPA_BACKEND=numpy to force the fallback, e.g. when debugging or when
measuring what the JIT buys; if numba is not importable the fallback is
used automatically.
"""

from __future__ import annotations

import os
import warnings

_BACKENDS = ("numba", "numpy")
_module = None
_name: str | None = None


def load(name: str):
    """Import a backend module by name without making it active."""
    if name == "numba":
        from . import _kernels_numba as mod
    elif name == "numpy":
        from . import _kernels_numpy as mod
    else:
        raise ValueError(
            f"backend must be one of {_BACKENDS}, got {name!r}")
    return mod


def select(name: str | None = None) -> str:
    """Load a backend by name ("numba" or "numpy") and make it active.

    With no argument, honors SPA_BACKEND and defaults to numba.
    Returns the name of the backend actually loaded.
    """
    global _module, _name
    if name is None:
        name = os.environ.get("SPA_BACKEND", "").strip().lower() or "numba"
    if name not in _BACKENDS:
        raise ValueError(
            f"SPA_BACKEND must be one of {_BACKENDS}, got {name!r}")
    if name == "numba":
        try:
            mod = load("numba")
        except ImportError:
            warnings.warn("numba unavailable, using the numpy backend",
                          RuntimeWarning, stacklevel=2)
            mod = load("numpy")
            name = "numpy"
    else:
        mod = load("numpy")
    _module, _name = mod, name
    return _name


def active() -> str:
    """Name of the backend in use, loading the default on first call."""
    if _name is None:
        select()
    return _name  # type: ignore[return-value]


def kernels():
    """The active kernel module."""
    if _module is None:
        select()
    return _module
