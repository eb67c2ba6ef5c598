"""Kernel backend selection.

The compiled extension is preferred; set OMEGALIFT_PURE=1 to force the
pure-Python fallback (used by the benchmark and for debugging).
"""

import os

if os.environ.get("OMEGALIFT_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
identity_perm = _impl.identity_perm
compose = _impl.compose
inverse_perm = _impl.inverse_perm
perm_power = _impl.perm_power
perm_order = _impl.perm_order
inversion_count = _impl.inversion_count
fset_indices = _impl.fset_indices
cocycle_coords = _impl.cocycle_coords
