"""Execution backend selection.

Two interchangeable kernel backends exist: ``"numba"`` (JIT-compiled, the
default when numba imports cleanly) and ``"numpy"`` (pure numpy). They
produce bitwise-identical results; the choice only affects speed.

The initial backend comes from the ``AQR_BACKEND`` environment variable
(``numba``, ``numpy`` or ``auto``); ``set_backend``/``use_backend`` switch it
at runtime.
"""

import os
from contextlib import contextmanager

from . import _kernels_numpy

_BACKENDS = {"numpy": _kernels_numpy}

try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

ENV_VAR = "AQR_BACKEND"


def _resolve(name):
    name = (name or "auto").strip().lower()
    if name == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if name not in _BACKENDS:
        known = "auto, " + ", ".join(sorted(_BACKENDS))
        raise ValueError(f"unknown backend {name!r} (choose one of: {known})")
    return name


_current = _resolve(os.environ.get(ENV_VAR, "auto"))


def current_backend():
    """Name of the active backend ("numba" or "numpy")."""
    return _current


def set_backend(name):
    """Switch the active backend; returns the previous backend name."""
    global _current
    previous = _current
    _current = _resolve(name)
    return previous


@contextmanager
def use_backend(name):
    """Context manager form of ``set_backend``."""
    previous = set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernels():
    """Kernel namespace of the active backend."""
    return _BACKENDS[_current]
