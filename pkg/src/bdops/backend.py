"""Kernel backend selection.

The environment variable ``BDOPS_BACKEND`` picks the implementation of the
hot kernels:

* ``numba`` - JIT-compiled loops (default when numba imports cleanly),
* ``numpy`` - pure numpy/scipy fallback,
* ``auto``  - numba if available, else numpy.

``set_backend`` switches at runtime (used by tests and the benchmark).
"""
import os

from . import _kernels_numpy

_BACKENDS = {"numpy": _kernels_numpy}
try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
    _DEFAULT = "numba"
except ImportError:  # pragma: no cover - numba is a hard dependency, but stay usable
    _DEFAULT = "numpy"

_active = None


def _resolve(name):
    if name in (None, "", "auto"):
        return _DEFAULT
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(_BACKENDS)}")
    return name


def set_backend(name):
    """Select the kernel backend by name ('numba', 'numpy' or 'auto')."""
    global _active
    _active = _BACKENDS[_resolve(name)]
    return _active


def get_backend():
    global _active
    if _active is None:
        set_backend(os.environ.get("BDOPS_BACKEND", "auto"))
    return _active


def backend_name():
    mod = get_backend()
    return "numba" if mod is _BACKENDS.get("numba") else "numpy"


def available_backends():
    return sorted(_BACKENDS)


def bernstein_rows(m, xs):
    return get_backend().bernstein_rows(m, xs)


def window_range_max(values, w):
    return get_backend().window_range_max(values, w)


def warmup():
    """Pre-compile / pre-cache the active backend's kernels."""
    get_backend().warmup()
