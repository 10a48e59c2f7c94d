"""Kernel backend selection.

The compiled ``_kernels`` extension is used when importable; otherwise, or
when the environment variable ``ETPA_PURE_PYTHON`` is set to a non-empty
value other than ``0``, the numpy implementation in ``_kernels_py`` is used.
"""
import os

from . import _kernels_py


def _load():
    if os.environ.get("ETPA_PURE_PYTHON", "") not in ("", "0"):
        return _kernels_py, "python"
    try:
        from . import _kernels
    except ImportError:
        return _kernels_py, "python"
    return _kernels, "cython"


kernels, BACKEND = _load()


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
