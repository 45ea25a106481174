"""Kernel backend selection: compiled extension if available, pure Python
otherwise.  Set PEBBLING_BACKEND=python|c to force one."""

from __future__ import annotations

import os

from . import _kernel_py

_kernel_c = None
if os.environ.get("PEBBLING_BACKEND", "") != "python":
    try:
        from . import _kernel_c  # type: ignore[no-redef]
    except ImportError:
        _kernel_c = None
        if os.environ.get("PEBBLING_BACKEND") == "c":
            raise ImportError("compiled kernel requested but not built")

DEFAULT = _kernel_c if _kernel_c is not None else _kernel_py


def get_kernel(name: str | None = None):
    """Resolve a backend by name: None (default), "python", or "c"."""
    if name is None:
        return DEFAULT
    if name == "python":
        return _kernel_py
    if name == "c":
        if _kernel_c is None:
            raise ImportError("compiled kernel not available")
        return _kernel_c
    raise ValueError(f"unknown backend {name!r}")


def backend_name() -> str:
    return DEFAULT.BACKEND_NAME


def available_backends() -> list[str]:
    return ["python"] + (["c"] if _kernel_c is not None else [])
