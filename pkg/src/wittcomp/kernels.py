"""Backend selection for the modular span-closure kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded.  ``WITTCOMP_BACKEND=python`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("WITTCOMP_BACKEND", "").lower() == "python":
        raise ImportError("fallback forced by WITTCOMP_BACKEND")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"


def get(name: str | None = None):
    """Kernel module by name; the active backend by default."""
    return BACKENDS[name or BACKEND]
