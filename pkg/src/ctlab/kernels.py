"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twins are used. Set ``CTLAB_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

_native = None
if os.environ.get("CTLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _native  # type: ignore[no-redef]
    except ImportError:
        _native = None

_impl = _native if _native is not None else _pykernels

BACKEND: str = _impl.BACKEND

orbits = _impl.orbits
closure = _impl.closure
rref_mod = _impl.rref_mod
nullspace_mod = _impl.nullspace_mod
matmul_mod = _impl.matmul_mod
charpoly_mod = _impl.charpoly_mod
poly_roots_mod = _impl.poly_roots_mod


def native_available() -> bool:
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True
