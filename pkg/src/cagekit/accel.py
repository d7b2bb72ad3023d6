"""Kernel backend selection.

Set CAGEKIT_NO_NUMBA=1 to force the pure-numpy fallbacks.  By default the
numba-jitted kernels are used, with an automatic fallback when numba is
missing or fails to import.  Both backends return identical results; the
stochastic parts of the library never live in kernels, so a run reproduces
bit-for-bit on either backend.
"""

import os

_flag = os.environ.get("CAGEKIT_NO_NUMBA", "").strip().lower()
_want_numba = _flag in ("", "0", "false", "no")

if _want_numba:
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _impl
        BACKEND = "numpy"
else:
    from . import _kernels_numpy as _impl
    BACKEND = "numpy"

single_source_truncated = _impl.single_source_truncated
all_pairs_truncated = _impl.all_pairs_truncated
update_distances_add = _impl.update_distances_add
girth_min_cycle = _impl.girth_min_cycle
refine_colors = _impl.refine_colors
