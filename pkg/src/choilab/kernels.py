"""Kernel backend selection.

The compiled ``_core`` extension is used when importable; otherwise, or
when ``CHOILAB_PURE_PYTHON`` is set to a non-empty value other than ``0``,
the numpy implementation in ``_core_py`` is used. ``BACKEND`` names the
active one.
"""
import os

from . import _core_py

if os.environ.get("CHOILAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _core_py
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _core_py

BACKEND = "python" if _impl is _core_py else "cython"

seesaw = _impl.seesaw
product_expectations = _impl.product_expectations


def compiled_available() -> bool:
    try:
        from . import _core  # noqa: F401
    except ImportError:
        return False
    return True


def get_backend(name: str):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _core_py
    if name == "cython":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
