"""Selects the kernel backend once at import time.

The compiled extension is preferred when present; set
``NODEDERIV_BACKEND=python`` or ``NODEDERIV_BACKEND=compiled`` to force a
choice (forcing ``compiled`` raises if the extension is missing).
"""

from __future__ import annotations

import os

_ENV_VAR = "NODEDERIV_BACKEND"


def _load():
    forced = os.environ.get(_ENV_VAR, "").strip().lower()
    if forced and forced not in ("compiled", "python"):
        raise ImportError(
            f"{_ENV_VAR} must be 'compiled' or 'python', got {forced!r}"
        )
    if forced == "python":
        from . import _kernels_py
        return _kernels_py, "python"
    try:
        from . import _kernels_cy
        return _kernels_cy, "compiled"
    except ImportError:
        if forced == "compiled":
            raise ImportError(
                f"{_ENV_VAR}=compiled but the extension is not built"
            ) from None
        from . import _kernels_py
        return _kernels_py, "python"


_impl, _name = _load()

cell_neighbor_search = _impl.cell_neighbor_search
build_stencils = _impl.build_stencils
apply_stencils = _impl.apply_stencils


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _name
